"""Optional accelerated backend: JIT-compiled correlation kernel via numba."""

import numpy as np

from src.backend.base import BackendKind
from src.backend.parallel import ParallelBackend
from src.core.errors import (
    BackendUnavailableError,
    DimensionMismatchError,
    NonFiniteCorrelationError,
)
from src.core.types import Hyperparameters, Precision
from src.correlation.power_exp import CorrelationMatrix

try:
    from numba import njit, prange
except ImportError:  # pragma: no cover - depends on the environment
    njit = prange = None


if njit is not None:

    @njit(parallel=True, cache=True)
    def _corr_kernel(X, theta, p, nugget, out):
        n, d = X.shape
        for i in prange(n):
            out[i, i] = 1.0 + nugget
            for j in range(i):
                total = 0.0
                for k in range(d):
                    delta = abs(X[i, k] - X[j, k])
                    if delta > 0.0:
                        total += theta[k] * np.exp(p * np.log(delta))
                value = np.exp(-total)
                out[i, j] = value
                out[j, i] = value
        return out


class AcceleratedBackend(ParallelBackend):
    """
    Blocked factorization of ParallelBackend with R built by a compiled kernel.

    Requires numba; the two CPU backends cover every contract without it.
    """

    kind = BackendKind.ACCELERATED

    def __init__(
        self,
        precision: Precision = "double",
        workers: int | None = None,
        block_size: int = 128,
    ):
        if njit is None:
            raise BackendUnavailableError(
                "the accelerated backend needs numba; install it or use 'parallel'"
            )
        super().__init__(precision=precision, workers=workers, block_size=block_size)

    def _build_correlation(self, X: np.ndarray, params: Hyperparameters) -> CorrelationMatrix:
        X = np.ascontiguousarray(X, dtype=self.dtype)
        if X.ndim != 2 or X.shape[1] != params.d:
            raise DimensionMismatchError(
                f"X must be n x {params.d}, got shape {X.shape}"
            )
        theta = params.theta.astype(self.dtype)
        out = np.empty((X.shape[0], X.shape[0]), dtype=self.dtype)
        _corr_kernel(X, theta, self.dtype.type(params.p), self.dtype.type(params.nugget), out)
        if not np.all(np.isfinite(out)):
            raise NonFiniteCorrelationError("correlation matrix has non-finite entries")
        return CorrelationMatrix(values=out, nugget=params.nugget)
