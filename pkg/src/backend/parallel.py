"""Parallel blocked backend: right-looking panel Cholesky on a thread pool."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import linalg

from src.backend.base import BackendKind, BaseBackend
from src.core.errors import NotPositiveDefiniteError
from src.core.types import Precision

DEFAULT_BLOCK = 128


class ParallelBackend(BaseBackend):
    """
    Blocked Cholesky with LAPACK diagonal blocks and threaded trailing updates.

    Column panels of the trailing update are fixed by the block size, not by
    the worker count, so factors are bitwise identical for any `workers`.
    """

    kind = BackendKind.PARALLEL

    def __init__(
        self,
        precision: Precision = "double",
        workers: int | None = None,
        block_size: int = DEFAULT_BLOCK,
    ):
        """
        Initialize the backend.

        Args:
            precision: "single" or "double"
            workers: threads for R builds and trailing updates
            block_size: panel width of the blocked factorization
        """
        super().__init__(precision=precision, workers=workers)
        self.block_size = block_size
        self._executor = ThreadPoolExecutor(self.workers) if self.workers > 1 else None

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def _map(self, fn, items) -> None:
        if self._executor is None:
            for item in items:
                fn(item)
        else:
            list(self._executor.map(fn, items))

    def _cholesky(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        nb = self.block_size
        work = np.array(a, order="C", copy=True)

        for k0 in range(0, n, nb):
            k1 = min(k0 + nb, n)
            try:
                diag_block = linalg.cholesky(
                    work[k0:k1, k0:k1], lower=True, check_finite=False
                )
            except linalg.LinAlgError as e:
                raise NotPositiveDefiniteError(str(e)) from e
            work[k0:k1, k0:k1] = diag_block
            if k1 == n:
                break

            panel = linalg.solve_triangular(
                diag_block, work[k1:, k0:k1].T, lower=True, check_finite=False
            ).T
            work[k1:, k0:k1] = panel

            def update(c0: int, k1=k1, panel=panel) -> None:
                c1 = min(c0 + nb, n)
                rows = panel[c0 - k1 :]
                cols = panel[c0 - k1 : c1 - k1]
                work[c0:, c0:c1] -= rows @ cols.T

            self._map(update, range(k1, n, nb))

        return np.tril(work)

    def _forward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        return linalg.solve_triangular(lower, b, lower=True, check_finite=False)

    def _backward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        return linalg.solve_triangular(
            lower, b, lower=True, trans="T", check_finite=False
        )
