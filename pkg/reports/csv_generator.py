"""
SnCharLab CSV Generator

Plot-ready CSV: a header row of column keys, then one line per row.
"""

import csv
import logging
from pathlib import Path
from typing import IO, Optional

from reports.base_report import BaseReportGenerator, Destination

logger = logging.getLogger(__name__)


class CSVGenerator(BaseReportGenerator):
    """
    Generates CSV reports with the csv module.

    The header row is always written, even with no data rows. Lines end
    in "\\n" on every platform.
    """

    def generate(self, output: Destination) -> Optional[str]:
        """
        Write the report as CSV.

        Args:
            output: File path, or an open text stream (e.g. sys.stdout)

        Returns:
            Path to the generated file, or None for a stream
        """
        if isinstance(output, (str, Path)):
            with open(output, "w", newline="", encoding="utf-8") as handle:
                self._write(handle)
            logger.info(f"CSV report generated: {output}")
            return str(output)

        self._write(output)
        return None

    def _write(self, handle: IO[str]) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(self.data.keys)
        for row in self.data.rows:
            writer.writerow([self._format_value(row.get(key)) for key in self.data.keys])
