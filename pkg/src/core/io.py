"""CSV round-trip for datasets: header `x1,...,xd,y`, one row per point."""

from pathlib import Path

import numpy as np

from src.core.errors import DimensionMismatchError
from src.core.types import Dataset, Precision, new_dataset

# significant digits per precision; 17 round-trips any float64
_FORMATS = {"double": "%.17g", "single": "%.9g"}


def dataset_header(d: int) -> str:
    """CSV header x1..xd,y for a d-dimensional dataset."""
    return ",".join([f"x{k}" for k in range(1, d + 1)] + ["y"])


def save_dataset_csv(
    dataset: Dataset, path: str | Path, precision: Precision = "double"
) -> Path:
    """Write a dataset to CSV and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([dataset.inputs, dataset.outputs])
    np.savetxt(
        path,
        table,
        delimiter=",",
        fmt=_FORMATS[precision],
        header=dataset_header(dataset.d),
        comments="",
    )
    return path


def load_dataset_csv(path: str | Path) -> Dataset:
    """Read a dataset written by `save_dataset_csv`."""
    path = Path(path)
    with open(path) as f:
        header = f.readline().strip().split(",")
    if len(header) < 2 or header[-1] != "y":
        raise DimensionMismatchError(f"{path}: header must be x1,...,xd,y")

    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if table.shape[1] != len(header):
        raise DimensionMismatchError(
            f"{path}: {table.shape[1]} columns but header names {len(header)}"
        )
    return new_dataset(table[:, :-1], table[:, -1])
