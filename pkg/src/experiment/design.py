"""Maximin Latin hypercube designs on the unit cube."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.spatial.distance import cdist, pdist, squareform

logger = logging.getLogger(__name__)


class DesignSpec(BaseModel):
    """Protocol for one design."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2, description="Number of design points.")
    d: int = Field(ge=1, description="Input dimension.")
    seed: int = Field(default=0, ge=0, lt=2**64)
    exchange_budget: int = Field(
        default=10000, ge=0, description="Column-entry swaps proposed after the start."
    )


def latin_hypercube(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """
    Random Latin hypercube: each column has one point per stratum [i/n, (i+1)/n).

    Args:
        n: number of points
        d: number of dimensions
        rng: random generator to draw permutations and offsets from

    Returns:
        n x d array in [0, 1)
    """
    strata = np.column_stack([rng.permutation(n) for _ in range(d)])
    offsets = rng.random((n, d))
    points = (strata + offsets) / n
    # keep rounding from pushing a point onto the next stratum boundary
    upper = np.nextafter((strata + 1) / n, 0.0)
    return np.minimum(points, upper)


def min_distance(points: np.ndarray) -> float:
    """Smallest pairwise Euclidean distance."""
    if points.shape[0] < 2:
        return np.inf
    return float(pdist(points).min())


def maximin_lhd(spec: DesignSpec) -> np.ndarray:
    """
    Maximin Latin hypercube by point exchange.

    Starts from a random LHD and proposes `exchange_budget` swaps of one
    column entry between a point of the closest pair and a random other
    point. A swap is kept only when the minimum pairwise distance grows, so
    stratification is preserved and the criterion never decreases.

    Args:
        spec: design size, dimension, seed and swap budget

    Returns:
        n x d design, deterministic given `spec`
    """
    rng = np.random.default_rng(spec.seed)
    points = latin_hypercube(spec.n, spec.d, rng)
    if spec.n < 3 or spec.exchange_budget == 0:
        return points

    sq = squareform(pdist(points, "sqeuclidean"))
    np.fill_diagonal(sq, np.inf)
    current = sq.min()
    start = current
    accepted = 0

    for _ in range(spec.exchange_budget):
        flat = int(np.argmin(sq))
        pair = divmod(flat, spec.n)
        i = pair[int(rng.integers(2))]
        j = int(rng.integers(spec.n - 1))
        if j >= i:
            j += 1
        k = int(rng.integers(spec.d))

        points[[i, j], k] = points[[j, i], k]
        rows = cdist(points[[i, j]], points, "sqeuclidean")
        rows[0, i] = rows[1, j] = np.inf

        old_rows = sq[[i, j]].copy()
        sq[[i, j]] = rows
        sq[:, [i, j]] = rows.T
        candidate = sq.min()

        if candidate > current:
            current = candidate
            accepted += 1
        else:
            points[[i, j], k] = points[[j, i], k]
            sq[[i, j]] = old_rows
            sq[:, [i, j]] = old_rows.T

    logger.debug(
        "maximin_lhd n=%d d=%d: min distance %.4g -> %.4g (%d swaps kept)",
        spec.n,
        spec.d,
        np.sqrt(start),
        np.sqrt(current),
        accepted,
    )
    return points
