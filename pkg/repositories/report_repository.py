"""
Report persistence: JSON documents and fixed-column CSV files
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Type

from models.enums import OutputFormat
from repositories.base_repository import BaseRepository
from schemas.report_schema import ReportSchema
from utils.logging_utils import log_operation_error

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """CSV cell text; floats keep 17 significant digits"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    return str(value)


class ReportRepository(BaseRepository):
    """
    Writes reports of one schema type

    JSON uses sorted keys and two-space indentation, so identical reports give
    identical bytes apart from generated_at.
    """

    def __init__(self, schema: Type[ReportSchema]):
        self._schema = schema

    @property
    def schema(self) -> Type[ReportSchema]:
        return self._schema

    def render(self, report: ReportSchema, fmt: OutputFormat) -> str:
        if fmt == OutputFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(report.csv_header())
            for row in report.csv_rows():
                writer.writerow([format_cell(cell) for cell in row])
            return buffer.getvalue()
        return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"

    def save(self, report: ReportSchema, path: Path, fmt: OutputFormat) -> Path:
        """
        Write a report, creating parent directories

        Raises:
            OSError: If the file cannot be written
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.render(report, fmt), encoding="utf-8")
        except OSError as e:
            log_operation_error(logger, "writing", type(report).__name__, e, detail=str(path))
            raise
        logger.info(f"✅ Report written to {path}")
        return path

    def load(self, path: Path) -> ReportSchema:
        """
        Raises:
            OSError: If the file cannot be read
            ValidationError: If the document does not match the schema
        """
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        return self.schema.model_validate(document)
