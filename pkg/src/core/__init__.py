"""Core domain types."""

from src.core.types import (
    Dataset,
    FitConfig,
    GpModel,
    Hyperparameters,
    new_dataset,
)

__all__ = ["Dataset", "FitConfig", "GpModel", "Hyperparameters", "new_dataset"]
