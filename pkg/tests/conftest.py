"""Shared fixtures and brute-force oracles."""

import numpy as np
import pytest

from src.backend.parallel import ParallelBackend
from src.backend.reference import ReferenceBackend
from src.core.types import FitConfig, new_dataset
from src.optimizer.schema import GaConfig


def cofactor_det(a: np.ndarray) -> float:
    """Determinant by Laplace expansion along the first row."""
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * cofactor_det(minor)
    return total


def oracle_corr(X: np.ndarray, theta, p: float, nugget: float = 0.0) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    R = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            R[i, j] = np.exp(-np.sum(np.asarray(theta) * np.abs(X[i] - X[j]) ** p))
    return R + nugget * np.eye(n)


def oracle_profile(X, Y, theta, p: float = 1.95, nugget: float = 0.0) -> dict:
    """Profile objective with explicit inverse and cofactor determinant."""
    R = oracle_corr(X, theta, p, nugget)
    Y = np.asarray(Y, dtype=np.float64)
    n = Y.size
    R_inv = np.linalg.inv(R)
    ones = np.ones(n)
    mu = (ones @ R_inv @ Y) / (ones @ R_inv @ ones)
    residual = Y - mu
    qf = residual @ R_inv @ residual
    return {
        "R": R,
        "R_inv": R_inv,
        "mu_hat": mu,
        "sigma2_hat": qf / n,
        "log_det": np.log(cofactor_det(R)),
        "neg2_log_lik": np.log(cofactor_det(R)) + n * np.log(qf),
    }


def relative_error(actual, expected) -> float:
    actual = np.asarray(actual, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    scale = max(float(np.max(np.abs(expected))), 1e-300)
    return float(np.max(np.abs(actual - expected))) / scale


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def reference_backend():
    with ReferenceBackend() as backend:
        yield backend


@pytest.fixture
def parallel_backend():
    with ParallelBackend(workers=2, block_size=4) as backend:
        yield backend


@pytest.fixture
def two_point_dataset():
    return new_dataset([[0.0], [1.0]], [0.0, 1.0])


@pytest.fixture
def small_ga_config():
    return FitConfig(
        backend="reference",
        ga=GaConfig(population=20, generations=5),
        seed=7,
    )
