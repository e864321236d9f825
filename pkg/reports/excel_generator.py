"""
SnCharLab Excel Generator

Excel workbooks of experiment reports using openpyxl.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet

from reports.base_report import BaseReportGenerator, Destination, ReportData

logger = logging.getLogger(__name__)


ACCENT = "1E3A8A"
MUTED = "64748B"
BAND = "F8FAFC"
RULE = "E2E8F0"

# Column widths are clamped to this range (characters)
MIN_WIDTH = 8
MAX_WIDTH = 60


def _solid(color: str) -> PatternFill:
    return PatternFill(start_color=color, end_color=color, fill_type="solid")


class ExcelGenerator(BaseReportGenerator):
    """
    Generates Excel reports using openpyxl.

    The sheet holds a title block, a two-column block of run parameters
    and summary figures, then the data table with a frozen, filterable
    header. Cells hold the same strings as the CSV output, so
    big integers and six-place densities survive unchanged.
    """

    def __init__(self, report_data: ReportData):
        """
        Initialize the Excel generator.

        Args:
            report_data: Report configuration and data
        """
        super().__init__(report_data)
        self.wb = Workbook()
        self.ws: Worksheet = self.wb.active
        rule = Side(style="thin", color=RULE)
        self.styles: Dict[str, Dict[str, Any]] = {
            "title": {"font": Font(size=14, bold=True, color=ACCENT)},
            "note": {"font": Font(size=9, color=MUTED)},
            "label": {"font": Font(size=9, bold=True, color=MUTED)},
            "header": {
                "font": Font(size=10, bold=True, color="FFFFFF"),
                "fill": _solid(ACCENT),
                "alignment": Alignment(horizontal="center"),
            },
            "cell": {
                "font": Font(size=10),
                "border": Border(bottom=rule),
            },
        }

    def _put(self, row: int, column: int, value: Any, style: str) -> None:
        cell = self.ws.cell(row=row, column=column, value=value)
        for attribute, setting in self.styles[style].items():
            setattr(cell, attribute, setting)

    def generate(self, output: Destination) -> Optional[str]:
        """
        Write the report as an .xlsx workbook.

        Args:
            output: Path of the workbook

        Returns:
            Path to the generated file

        Raises:
            ValueError: If output is a stream rather than a path
        """
        if not isinstance(output, (str, Path)):
            raise ValueError("Excel output needs a file path (use --out)")

        config = self.data.config
        self.ws.title = "Report"
        self._put(1, 1, config.title, "title")
        byline = config.generated_by if not config.subtitle else f"{config.subtitle} | {config.generated_by}"
        self._put(2, 1, byline, "note")

        row = 4
        row = self._key_values(row, "Parameters", self.data.parameters)
        if config.include_summary:
            row = self._key_values(row, "Summary", self.data.summary)

        if self.data.rows:
            row = self._table(row)
        else:
            self._put(row, 1, "No rows.", "note")
            row += 1

        if config.include_footer:
            self._put(row + 1, 1, f"Total rows: {self.data.row_count}", "note")

        self._fit_columns()
        self.wb.save(str(output))
        logger.info(f"Excel report generated: {output}")
        return str(output)

    def _key_values(self, row: int, label: str, values: Dict[str, Any]) -> int:
        """Write a labelled block of key/value pairs; return the next free row."""
        shown = {key: value for key, value in values.items() if value is not None}
        if not shown:
            return row
        self._put(row, 1, label, "label")
        for offset, (key, value) in enumerate(shown.items(), start=1):
            self._put(row + offset, 1, key, "note")
            self._put(row + offset, 2, self._format_value(value), "cell")
        return row + len(shown) + 2

    def _table(self, row: int) -> int:
        """Write the header and data rows; return the next free row."""
        header_row = row
        for index, column in enumerate(self.data.columns, start=1):
            self._put(header_row, index, column.header, "header")

        band = _solid(BAND)
        for offset, record in enumerate(self.data.rows, start=1):
            for index, column in enumerate(self.data.columns, start=1):
                self._put(header_row + offset, index, self._format_value(record.get(column.key)), "cell")
                cell = self.ws.cell(row=header_row + offset, column=index)
                cell.alignment = Alignment(horizontal=column.align)
                if offset % 2 == 0:
                    cell.fill = band

        last_row = header_row + len(self.data.rows)
        last_column = get_column_letter(len(self.data.columns))
        self.ws.auto_filter.ref = f"A{header_row}:{last_column}{last_row}"
        self.ws.freeze_panes = self.ws.cell(row=header_row + 1, column=1)
        return last_row + 1

    def _fit_columns(self) -> None:
        for index, cells in enumerate(self.ws.columns, start=1):
            longest = max((len(str(cell.value)) for cell in cells if cell.value is not None), default=0)
            width = min(max(longest + 2, MIN_WIDTH), MAX_WIDTH)
            self.ws.column_dimensions[get_column_letter(index)].width = width
