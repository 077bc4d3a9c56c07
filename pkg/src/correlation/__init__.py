"""Power-exponential correlation."""

from src.correlation.power_exp import (
    CorrelationMatrix,
    build_corr_matrix,
    corr_cross,
    corr_vector,
)

__all__ = ["CorrelationMatrix", "build_corr_matrix", "corr_cross", "corr_vector"]
