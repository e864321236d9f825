"""
SnCharLab Reports Module

Report generation for CSV, JSON and Excel exports.
"""

from reports.csv_generator import CSVGenerator
from reports.excel_generator import ExcelGenerator
from reports.json_generator import JSONGenerator

__all__ = ["CSVGenerator", "JSONGenerator", "ExcelGenerator"]
