"""
SnCharLab Report Service

Turns experiment results into ReportData and writes them as CSV, JSON
or Excel.
"""

import logging
import sys
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence, Tuple

from app.constants import (
    DENSITY_CSV_COLUMNS,
    MOMENT_CSV_COLUMNS,
    TREND_CSV_COLUMNS,
    OutputFormat,
)
from models.asymptotic import AsymptoticReport
from models.character import CharTable
from models.partition import Partition
from models.report import DensityReport, MomentReport, TrendRow
from models.series import PSeries
from reports.base_report import ReportColumn, ReportConfig, ReportData
from reports.csv_generator import CSVGenerator
from reports.excel_generator import ExcelGenerator
from reports.json_generator import JSONGenerator

logger = logging.getLogger(__name__)


def _columns(keys: Iterable[str], align: str = "right") -> List[ReportColumn]:
    return [ReportColumn(key, key.replace("_", " ").title(), 80, align) for key in keys]


class ReportService:
    """
    Service for building and writing experiment reports.

    Every build_* method returns ReportData; write() serializes it.
    """

    GENERATORS = {
        OutputFormat.CSV: CSVGenerator,
        OutputFormat.JSON: JSONGenerator,
        OutputFormat.XLSX: ExcelGenerator,
    }

    # Report type configurations
    REPORT_TYPES = {
        "density": {
            "title": "Divisibility Density",
            "subtitle": "Character table entries divisible by p",
        },
        "trend": {
            "title": "Density Trend",
            "subtitle": "Exact, certified and sampled densities over n",
        },
        "moments": {
            "title": "Moment Cross-check",
            "subtitle": "Enumerated moments of M^(k) against generating functions",
        },
        "table": {
            "title": "Character Table",
            "subtitle": "Rows lambda, columns mu, reverse-lexicographic order",
        },
        "count": {
            "title": "Counting Function",
            "subtitle": "Exact coefficients",
        },
        "asymptotic": {
            "title": "Asymptotic Estimates",
            "subtitle": "Estimates against exact values",
        },
        "verification": {
            "title": "Verification",
            "subtitle": "Exhaustive checks (0 violations expected)",
        },
        "values": {
            "title": "Values",
            "subtitle": None,
        },
    }

    def _config(self, report_type: str, title: Optional[str] = None) -> ReportConfig:
        settings = self.REPORT_TYPES[report_type]
        return ReportConfig(title=title or settings["title"], subtitle=settings["subtitle"])

    def build_density_report(
        self, reports: Sequence[DensityReport], parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """
        Density reports in the fixed CSV schema.

        The summary carries the sampled estimate and standard error when
        present.
        """
        rows = [dict(zip(DENSITY_CSV_COLUMNS, report.to_row())) for report in reports]
        summary: Dict[str, Any] = {}
        for report in reports:
            if report.estimate is not None:
                summary[f"estimate n={report.n}"] = report.estimate
                summary[f"stderr n={report.n}"] = report.stderr
        return ReportData(
            config=self._config("density"),
            columns=_columns(DENSITY_CSV_COLUMNS),
            rows=rows,
            summary=summary,
            parameters=parameters or {},
        )

    def build_trend_report(
        self, rows: Sequence[TrendRow], parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """Trend rows, one per n."""
        return ReportData(
            config=self._config("trend"),
            columns=_columns(TREND_CSV_COLUMNS),
            rows=[dict(zip(TREND_CSV_COLUMNS, row.to_row())) for row in rows],
            parameters=parameters or {},
        )

    def build_moment_report(
        self, reports: Sequence[MomentReport], parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """Moment cross-check rows."""
        rows = []
        for report in reports:
            values = report.to_dict()
            rows.append({key: values[key] for key in MOMENT_CSV_COLUMNS})
        return ReportData(
            config=self._config("moments"),
            columns=_columns(MOMENT_CSV_COLUMNS),
            rows=rows,
            summary={"all_match": all(report.matches for report in reports)},
            parameters=parameters or {},
        )

    def build_table_report(self, table: CharTable) -> ReportData:
        """
        A character table: one row per lambda, one column per mu.

        Values are exact integers, or residues in [0, p) for a mod-p table.
        """
        columns = [ReportColumn("lambda", "lambda", 100, "left")]
        keys = [str(mu) for mu in table.partitions]
        columns.extend(ReportColumn(key, key, 60, "right") for key in keys)

        rows = []
        for i, lam in enumerate(table.partitions):
            row: Dict[str, Any] = {"lambda": str(lam)}
            for key, column in zip(keys, table.columns):
                row[key] = column.values[i]
            rows.append(row)

        title = f"Character Table of S_{table.n}"
        if table.modulus is not None:
            title += f" mod {table.modulus}"
        return ReportData(
            config=self._config("table", title),
            columns=columns,
            rows=rows,
            summary={"classes": table.size},
            parameters={"n": table.n, "modulus": table.modulus},
        )

    def build_count_report(
        self, name: str, series: PSeries, parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """Coefficients 0..truncation of a counting series."""
        rows = [{"n": n, name: value} for n, value in enumerate(series.coeffs)]
        return ReportData(
            config=self._config("count", f"Counting Function {name}"),
            columns=_columns(["n", name]),
            rows=rows,
            parameters=parameters or {},
        )

    def build_asymptotic_report(
        self,
        reports: Sequence[Tuple[int, AsymptoticReport]],
        parameters: Optional[Dict[str, Any]] = None,
    ) -> ReportData:
        """Estimates with exact values and errors, keyed by n."""
        keys = ["n", "quantity", "estimate", "exact", "relative_error", "log_ratio"]
        rows = []
        for n, report in reports:
            row = {"n": n}
            row.update(report.to_dict())
            rows.append(row)
        return ReportData(
            config=self._config("asymptotic"),
            columns=_columns(keys),
            rows=rows,
            parameters=parameters or {},
        )

    def build_verification_report(
        self, name: str, results: Sequence[Dict[str, Any]], parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """
        Per-instance violation counts of a verifier.

        Args:
            name: Verifier name
            results: Dicts with the instance parameters and "violations"
        """
        keys: List[str] = []
        for result in results:
            for key in result:
                if key not in keys:
                    keys.append(key)
        return ReportData(
            config=self._config("verification", f"Verification {name}"),
            columns=_columns(keys),
            rows=list(results),
            summary={"violations": sum(result.get("violations", 0) for result in results)},
            parameters=parameters or {},
        )

    def build_values_report(
        self,
        title: str,
        rows: Sequence[Dict[str, Any]],
        keys: Sequence[str],
        parameters: Optional[Dict[str, Any]] = None,
    ) -> ReportData:
        """A generic keyed table (histograms, signs, samples, single values)."""
        return ReportData(
            config=self._config("values", title),
            columns=_columns(keys),
            rows=list(rows),
            parameters=parameters or {},
        )

    def build_samples_report(
        self, partitions: Sequence[Partition], parameters: Optional[Dict[str, Any]] = None
    ) -> ReportData:
        """Sampled partitions in draw order."""
        rows = [
            {"index": i, "partition": str(lam), "largest": lam.largest, "length": lam.length}
            for i, lam in enumerate(partitions)
        ]
        return self.build_values_report(
            "Sampled Partitions", rows, ["index", "partition", "largest", "length"], parameters
        )

    def write(
        self,
        data: ReportData,
        output_format: OutputFormat,
        output_path: Optional[str] = None,
        stream: Optional[IO[str]] = None,
    ) -> Optional[str]:
        """
        Serialize a report.

        Args:
            data: Report to write
            output_format: csv, json or xlsx
            output_path: File to write; None writes to stream
            stream: Text stream used without a path (default stdout)

        Returns:
            Path written, or None for a stream

        Raises:
            ValueError: If xlsx is requested without a path
        """
        generator = self.GENERATORS[output_format](data)
        if output_path is not None:
            Path(output_path).parent.mkdir(parents=True, exist_ok=True)
            path = generator.generate(output_path)
            logger.info(f"Wrote {data.row_count} rows to {path}")
            return path
        if output_format == OutputFormat.XLSX:
            raise ValueError("xlsx output needs --out PATH")
        generator.generate(stream or sys.stdout)
        return None
