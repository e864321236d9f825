"""
SnCharLab Base Report

Base class and data structures for report generation.

Report content carries no timestamps: the same flags and seed always
produce the same bytes.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Union

from app.constants import APP_NAME
from models.report import fraction_to_decimal


@dataclass
class ReportConfig:
    """Configuration for report generation."""

    title: str
    subtitle: Optional[str] = None
    generated_by: str = APP_NAME
    include_summary: bool = True
    include_footer: bool = True


@dataclass
class ReportColumn:
    """Defines a column in a report table."""

    key: str
    header: str
    width: int = 100
    align: str = "right"  # left, center, right


@dataclass
class ReportData:
    """Data structure for report content."""

    config: ReportConfig
    columns: List[ReportColumn]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = field(default_factory=dict)
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def row_count(self) -> int:
        """Get the number of data rows."""
        return len(self.rows)

    @property
    def keys(self) -> List[str]:
        """Column keys in display order."""
        return [col.key for col in self.columns]


Destination = Union[str, Path, IO[str]]


class BaseReportGenerator:
    """Base class for report generators."""

    def __init__(self, report_data: ReportData):
        """
        Initialize the report generator.

        Args:
            report_data: Report configuration and data
        """
        self.data = report_data

    def generate(self, output: Destination) -> Optional[str]:
        """
        Generate the report.

        Args:
            output: File path, or an open text stream

        Returns:
            Path to the generated file, or None when written to a stream

        Raises:
            NotImplementedError: Must be implemented by subclasses
        """
        raise NotImplementedError("Subclasses must implement generate()")

    def _format_value(self, value: Any) -> str:
        """
        Format a value for display.

        Args:
            value: Value to format

        Returns:
            Formatted string
        """
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, Fraction):
            return fraction_to_decimal(value)
        if isinstance(value, float):
            if math.isinf(value) or math.isnan(value):
                return str(value)
            return repr(value)
        if isinstance(value, (list, tuple)):
            return ";".join(self._format_value(v) for v in value)
        return str(value)
