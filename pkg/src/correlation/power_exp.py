"""Power-exponential correlation: R_ij = exp(-sum_k theta_k |x_ik - x_jk|^p)."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from src.core.errors import DimensionMismatchError, NonFiniteCorrelationError
from src.core.types import Hyperparameters, check_unit_cube

# lower-triangle pairs per parallel work item
PAIR_BLOCK = 1 << 16
# test points per cross-correlation block
ROW_BLOCK = 256


@dataclass(frozen=True)
class CorrelationMatrix:
    """Dense symmetric R with diagonal 1 + nugget."""

    values: np.ndarray
    nugget: float = 0.0

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _abs_pow(delta: np.ndarray, p: float) -> np.ndarray:
    """|delta|^p as exp(p log|delta|), with delta == 0 mapped to 0."""
    magnitude = np.abs(delta)
    zero = magnitude == 0
    with np.errstate(divide="ignore"):
        powered = np.exp(p * np.log(magnitude))
    powered[zero] = 0
    return powered


def _decay(left: np.ndarray, right: np.ndarray, params: Hyperparameters) -> np.ndarray:
    """
    sum_k theta_k |left_k - right_k|^p for broadcastable point arrays.

    The reduction over k always runs in order k = 1..d.
    """
    dtype = left.dtype
    theta = params.theta.astype(dtype)
    p = dtype.type(params.p)
    total = np.zeros(np.broadcast_shapes(left.shape[:-1], right.shape[:-1]), dtype=dtype)
    for k in range(theta.size):
        total += theta[k] * _abs_pow(left[..., k] - right[..., k], p)
    return total


def pair_indices(start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/column of lower-triangle pairs with linear index in [start, stop)."""
    linear = np.arange(start, stop, dtype=np.int64)
    rows = ((1 + np.sqrt(1 + 8 * linear.astype(np.float64))) // 2).astype(np.int64)
    # correct float rounding of the square root
    rows -= (rows * (rows - 1) // 2 > linear).astype(np.int64)
    rows += ((rows + 1) * rows // 2 <= linear).astype(np.int64)
    cols = linear - rows * (rows - 1) // 2
    return rows, cols


def _check_points(X: np.ndarray, params: Hyperparameters, dtype) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatchError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[1] != params.d:
        raise DimensionMismatchError(
            f"X has {X.shape[1]} columns but theta has {params.d} entries"
        )
    return X.astype(dtype, copy=False)


def build_corr_matrix(
    X: np.ndarray,
    params: Hyperparameters,
    workers: int = 1,
    dtype=np.float64,
) -> CorrelationMatrix:
    """
    Build the correlation matrix of a design.

    Only the strict lower triangle is evaluated, in blocks of consecutive
    pair indices; each block may run on its own thread. The sum over
    dimensions inside a pair is sequential, so the result is bitwise
    independent of `workers`.

    Args:
        X: n x d design
        params: theta, p and nugget
        workers: threads used for the pair blocks
        dtype: float32 or float64

    Returns:
        CorrelationMatrix with diagonal 1 + nugget

    Raises:
        NonFiniteCorrelationError: any entry is NaN or infinite
    """
    dtype = np.dtype(dtype)
    X = _check_points(X, params, dtype)
    n = X.shape[0]
    values = np.empty((n, n), dtype=dtype)
    total_pairs = n * (n - 1) // 2

    def fill(start: int) -> None:
        stop = min(start + PAIR_BLOCK, total_pairs)
        rows, cols = pair_indices(start, stop)
        corr = np.exp(-_decay(X[rows], X[cols], params))
        values[rows, cols] = corr
        values[cols, rows] = corr

    starts = range(0, total_pairs, PAIR_BLOCK)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as executor:
            list(executor.map(fill, starts))
    else:
        for start in starts:
            fill(start)

    np.fill_diagonal(values, dtype.type(1.0) + dtype.type(params.nugget))
    if not np.all(np.isfinite(values)):
        raise NonFiniteCorrelationError("correlation matrix has non-finite entries")
    return CorrelationMatrix(values=values, nugget=params.nugget)


def corr_vector(x_star: np.ndarray, X: np.ndarray, params: Hyperparameters) -> np.ndarray:
    """
    Cross-correlations r_i = exp(-sum_k theta_k |x*_k - x_ik|^p).

    No nugget is added; it belongs to the training diagonal only.
    """
    x_star = check_unit_cube(np.asarray(x_star, dtype=np.float64).reshape(-1))
    if x_star.size != params.d:
        raise DimensionMismatchError(
            f"x_star has {x_star.size} entries but theta has {params.d}"
        )
    X = _check_points(X, params, np.float64)
    return np.exp(-_decay(x_star[None, :], X, params))


def corr_cross(
    Xtest: np.ndarray,
    X: np.ndarray,
    params: Hyperparameters,
    workers: int = 1,
) -> np.ndarray:
    """
    N x n cross-correlation matrix; row j equals corr_vector(Xtest[j], X, params).
    """
    Xtest = np.asarray(Xtest, dtype=np.float64)
    if Xtest.ndim != 2 or Xtest.shape[1] != params.d:
        raise DimensionMismatchError(
            f"test inputs must be N x {params.d}, got shape {Xtest.shape}"
        )
    Xtest = check_unit_cube(Xtest)
    X = _check_points(X, params, np.float64)
    out = np.empty((Xtest.shape[0], X.shape[0]))

    def fill(start: int) -> None:
        stop = min(start + ROW_BLOCK, Xtest.shape[0])
        out[start:stop] = np.exp(-_decay(Xtest[start:stop, None, :], X[None, :, :], params))

    starts = range(0, Xtest.shape[0], ROW_BLOCK)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as executor:
            list(executor.map(fill, starts))
    else:
        for start in starts:
            fill(start)
    return out
