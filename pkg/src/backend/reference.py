"""Reference sequential backend: column-by-column Cholesky and substitution."""

import numpy as np

from src.backend.base import BackendKind, BaseBackend
from src.core.errors import NotPositiveDefiniteError
from src.core.types import Precision


class ReferenceBackend(BaseBackend):
    """Unblocked algorithms, one column or row per step, no threading."""

    kind = BackendKind.REFERENCE

    def __init__(self, precision: Precision = "double", workers: int | None = None):
        super().__init__(precision=precision, workers=1)

    def _cholesky(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        lower = np.zeros_like(a)
        for j in range(n):
            row = lower[j, :j]
            pivot = a[j, j] - row @ row
            if not (np.isfinite(pivot) and pivot > 0):
                raise NotPositiveDefiniteError(f"non-positive pivot at column {j}")
            lower[j, j] = np.sqrt(pivot)
            if j + 1 < n:
                lower[j + 1 :, j] = (a[j + 1 :, j] - lower[j + 1 :, :j] @ row) / lower[j, j]
        return lower

    def _forward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        u = np.zeros_like(b)
        for i in range(b.shape[0]):
            u[i] = (b[i] - lower[i, :i] @ u[:i]) / lower[i, i]
        return u

    def _backward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = b.shape[0]
        x = np.zeros_like(b)
        for i in range(n - 1, -1, -1):
            x[i] = (b[i] - lower[i + 1 :, i] @ x[i + 1 :]) / lower[i, i]
        return x
