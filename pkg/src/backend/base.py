"""Base class for dense linear-algebra backends."""

import logging
import os
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.core.errors import DimensionMismatchError, NotPositiveDefiniteError
from src.core.types import DTYPES, Hyperparameters, Precision
from src.correlation.power_exp import CorrelationMatrix, build_corr_matrix

logger = logging.getLogger(__name__)

# diagonal inflation tried in order until Cholesky succeeds
JITTER_LADDER = (0.0, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4)


class BackendKind(str, Enum):
    """Identifiers accepted in configuration."""

    REFERENCE = "reference"
    PARALLEL = "parallel"
    ACCELERATED = "accelerated"


@dataclass(frozen=True)
class CorrelationFactor:
    """Cholesky factor L of R + jitter_used * I, with log|R + jitter_used * I|."""

    factor_data: np.ndarray
    log_det: float
    jitter_used: float

    @property
    def n(self) -> int:
        return self.factor_data.shape[0]


@dataclass(frozen=True)
class LedgerCounts:
    """Operation counts of one session."""

    r_builds: int = 0
    factorizations: int = 0
    triangular_solves: int = 0


class OpLedger:
    """Thread-safe operation counters."""

    def __init__(self):
        self._lock = threading.Lock()
        self._r_builds = 0
        self._factorizations = 0
        self._triangular_solves = 0

    def record(
        self, r_builds: int = 0, factorizations: int = 0, triangular_solves: int = 0
    ) -> None:
        with self._lock:
            self._r_builds += r_builds
            self._factorizations += factorizations
            self._triangular_solves += triangular_solves

    def snapshot(self) -> LedgerCounts:
        with self._lock:
            return LedgerCounts(
                r_builds=self._r_builds,
                factorizations=self._factorizations,
                triangular_solves=self._triangular_solves,
            )


def default_workers() -> int:
    """Worker count from GP_BENCH_WORKERS, else the CPU count."""
    env = os.getenv("GP_BENCH_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


class BaseBackend(ABC):
    """
    Factorization, triangular solves and correlation builds behind one interface.

    An instance is one session: its ledger accumulates every operation run
    through it. Precision is fixed per instance.
    """

    kind: BackendKind

    def __init__(self, precision: Precision = "double", workers: int | None = None):
        """
        Initialize the backend.

        Args:
            precision: "single" or "double"
            workers: threads for internal parallelism (None means default_workers())
        """
        if precision not in DTYPES:
            raise ValueError(f"precision must be one of {sorted(DTYPES)}, got {precision}")
        self.precision = precision
        self.dtype = np.dtype(DTYPES[precision])
        self.workers = workers or default_workers()
        self.ledger = OpLedger()

    def __enter__(self) -> "BaseBackend":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        """Release worker resources."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}(precision={self.precision!r}, workers={self.workers})"

    def build_correlation(self, X: np.ndarray, params: Hyperparameters) -> CorrelationMatrix:
        """Build R in this backend's precision (counts one R build)."""
        R = self._build_correlation(X, params)
        self.ledger.record(r_builds=1)
        return R

    def _build_correlation(self, X: np.ndarray, params: Hyperparameters) -> CorrelationMatrix:
        return build_corr_matrix(X, params, workers=self.workers, dtype=self.dtype)

    def factorize(self, R: CorrelationMatrix | np.ndarray) -> CorrelationFactor:
        """
        Cholesky-factorize R, escalating diagonal jitter along JITTER_LADDER.

        Args:
            R: symmetric correlation matrix

        Returns:
            CorrelationFactor of R + jitter_used * I

        Raises:
            NotPositiveDefiniteError: every ladder step failed
        """
        values = R.values if isinstance(R, CorrelationMatrix) else np.asarray(R)
        values = np.asarray(values, dtype=self.dtype)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DimensionMismatchError(f"R must be square, got shape {values.shape}")
        self.ledger.record(factorizations=1)

        for jitter in JITTER_LADDER:
            shifted = values.copy()
            if jitter:
                shifted[np.diag_indices_from(shifted)] += self.dtype.type(jitter)
            try:
                lower = self._cholesky(shifted)
            except NotPositiveDefiniteError:
                logger.debug("Cholesky failed at jitter %g", jitter)
                continue
            diag = np.diagonal(lower)
            if not (np.all(np.isfinite(lower)) and np.all(diag > 0)):
                continue
            if jitter:
                logger.debug("Cholesky succeeded with jitter %g", jitter)
            log_det = 2.0 * float(np.sum(np.log(diag.astype(np.float64))))
            lower.setflags(write=False)
            return CorrelationFactor(factor_data=lower, log_det=log_det, jitter_used=jitter)

        raise NotPositiveDefiniteError(
            f"R ({values.shape[0]}x{values.shape[0]}) not positive definite with "
            f"jitter up to {JITTER_LADDER[-1]:g}"
        )

    def _check_rhs(self, factor: CorrelationFactor, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=self.dtype)
        if b.shape[0] != factor.n:
            raise DimensionMismatchError(
                f"right-hand side has {b.shape[0]} rows, factor is {factor.n}x{factor.n}"
            )
        return b

    def solve_lower(self, factor: CorrelationFactor, b: np.ndarray) -> np.ndarray:
        """Forward substitution: u with L u = b (one triangular solve)."""
        b = self._check_rhs(factor, b)
        self.ledger.record(triangular_solves=1)
        return self._forward(factor.factor_data, b)

    def solve_full(self, factor: CorrelationFactor, b: np.ndarray) -> np.ndarray:
        """x with (R + jitter I) x = b: forward then backward substitution (two solves)."""
        b = self._check_rhs(factor, b)
        self.ledger.record(triangular_solves=2)
        return self._backward(factor.factor_data, self._forward(factor.factor_data, b))

    def op_ledger(self) -> LedgerCounts:
        """Counts of R builds, factorizations and triangular solves so far."""
        return self.ledger.snapshot()

    @abstractmethod
    def _cholesky(self, a: np.ndarray) -> np.ndarray:
        """
        Lower Cholesky factor of `a`.

        Raises:
            NotPositiveDefiniteError: `a` is not numerically positive definite
        """

    @abstractmethod
    def _forward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Solve L u = b."""

    @abstractmethod
    def _backward(self, lower: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Solve L^T x = b."""
