"""Test simulators on the unit cube."""

from collections.abc import Callable

import numpy as np

GOLDSTEIN_PRICE_LOWER = -2.0
GOLDSTEIN_PRICE_UPPER = 2.0

HARTMAN6_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
HARTMAN6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
HARTMAN6_P = 1e-4 * np.array(
    [
        [1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0],
        [2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0],
        [2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0],
        [4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0],
    ]
)
HARTMAN6_MINIMIZER = np.array([0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573])
HARTMAN6_MINIMUM = -3.32237


def goldstein_price(u, v):
    """Goldstein-Price polynomial on its natural domain [-2, 2]^2."""
    fact1a = (u + v + 1) ** 2
    fact1b = 19 - 14 * u + 3 * u**2 - 14 * v + 6 * u * v + 3 * v**2
    fact2a = (2 * u - 3 * v) ** 2
    fact2b = 18 - 32 * u + 12 * u**2 + 48 * v - 36 * u * v + 27 * v**2
    return (1 + fact1a * fact1b) * (30 + fact2a * fact2b)


def goldstein_price_log(x):
    """
    Log Goldstein-Price on [0, 1]^2.

    Accepts a 2-vector or an (N, 2) array; maps affinely onto [-2, 2]^2.
    """
    x = np.asarray(x, dtype=np.float64)
    scaled = GOLDSTEIN_PRICE_LOWER + (GOLDSTEIN_PRICE_UPPER - GOLDSTEIN_PRICE_LOWER) * x
    return np.log(goldstein_price(scaled[..., 0], scaled[..., 1]))


def hartman6(x):
    """
    Six-dimensional Hartman function on [0, 1]^6.

    Accepts a 6-vector or an (N, 6) array.
    """
    x = np.asarray(x, dtype=np.float64)
    inner = np.sum(HARTMAN6_A * (x[..., None, :] - HARTMAN6_P) ** 2, axis=-1)
    return -np.sum(HARTMAN6_ALPHA * np.exp(-inner), axis=-1)


SIMULATORS: dict[str, tuple[Callable[[np.ndarray], np.ndarray], int]] = {
    "goldstein_price_log": (goldstein_price_log, 2),
    "hartman6": (hartman6, 6),
}


def get_simulator(name: str) -> tuple[Callable[[np.ndarray], np.ndarray], int]:
    """Simulator callable and its input dimension."""
    if name not in SIMULATORS:
        raise ValueError(f"Simulator '{name}' not found; known: {sorted(SIMULATORS)}")
    return SIMULATORS[name]
