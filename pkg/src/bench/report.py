"""CSV persistence of benchmark rows."""

import csv
from collections.abc import Iterable
from pathlib import Path

from pydantic import BaseModel

from src.bench.schema import CSV_FIELDS, BenchReportRow


class RowWriter:
    """Appends rows to a CSV file one at a time, flushing after each row."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = open(self.path, "w", newline="")
        self._writer = csv.DictWriter(self._file, fieldnames=CSV_FIELDS)
        self._writer.writeheader()
        self._file.flush()

    def write(self, row: BenchReportRow) -> None:
        self._writer.writerow(_serialize(row))
        self._file.flush()

    def close(self) -> None:
        self._file.close()

    def __enter__(self) -> "RowWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _serialize(model: BaseModel) -> dict[str, str]:
    return {
        key: repr(value) if isinstance(value, float) else str(value)
        for key, value in model.model_dump().items()
    }


def read_rows(path: str | Path) -> list[BenchReportRow]:
    """Load rows written by RowWriter (partial files included)."""
    with open(path, newline="") as f:
        return [BenchReportRow.model_validate(record) for record in csv.DictReader(f)]


def write_models(path: str | Path, models: Iterable[BaseModel]) -> Path:
    """Write summary or speedup rows as CSV."""
    models = list(models)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        if not models:
            return path
        writer = csv.DictWriter(f, fieldnames=list(type(models[0]).model_fields))
        writer.writeheader()
        for model in models:
            writer.writerow(_serialize(model))
    return path
