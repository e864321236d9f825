"""
SnCharLab JSON Generator

One JSON document per report: title, parameters, summary and rows.
"""

import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from models.report import fraction_to_decimal
from reports.base_report import BaseReportGenerator, Destination

logger = logging.getLogger(__name__)

# Integers beyond this lose precision in double-based JSON readers
_SAFE_INTEGER = 2**53


def to_json_value(value: Any) -> Any:
    """
    Convert a report cell to a JSON-safe value.

    Big integers and rationals become decimal strings; infinities and NaN
    become strings.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value if abs(value) < _SAFE_INTEGER else str(value)
    if isinstance(value, Fraction):
        return fraction_to_decimal(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    return str(value)


class JSONGenerator(BaseReportGenerator):
    """
    Generates JSON reports.

    Keys keep column order; output is indented and ends with a newline.
    """

    def build_document(self) -> dict:
        """The report as a plain dictionary."""
        return {
            "title": self.data.config.title,
            "subtitle": self.data.config.subtitle,
            "generated_by": self.data.config.generated_by,
            "parameters": to_json_value(self.data.parameters),
            "summary": to_json_value(self.data.summary),
            "columns": self.data.keys,
            "rows": [
                {key: to_json_value(row.get(key)) for key in self.data.keys} for row in self.data.rows
            ],
        }

    def generate(self, output: Destination) -> Optional[str]:
        """
        Write the report as JSON.

        Args:
            output: File path, or an open text stream

        Returns:
            Path to the generated file, or None for a stream
        """
        text = json.dumps(self.build_document(), indent=2) + "\n"
        if isinstance(output, (str, Path)):
            Path(output).write_text(text, encoding="utf-8")
            logger.info(f"JSON report generated: {output}")
            return str(output)

        output.write(text)
        return None
