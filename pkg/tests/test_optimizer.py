import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import OptimizerError
from src.optimizer.ga import ga_minimize
from src.optimizer.schema import GaConfig


def sphere(z: np.ndarray) -> float:
    return float(np.sum((z - 0.3) ** 2))


UNIT_SQUARE = (np.zeros(2), np.ones(2))


def test_sphere_reaches_optimum():
    result = ga_minimize(sphere, UNIT_SQUARE, GaConfig(seed=11))
    assert result.best_value <= 1e-3
    assert result.trace.evaluations == 2000


def test_best_values_never_increase():
    result = ga_minimize(sphere, UNIT_SQUARE, GaConfig(population=30, generations=15, seed=2))
    best = np.array(result.trace.best_values)
    assert np.all(np.diff(best) <= 0)


def test_same_seed_same_trace():
    cfg = GaConfig(population=20, generations=6, seed=99)
    a = ga_minimize(sphere, UNIT_SQUARE, cfg)
    b = ga_minimize(sphere, UNIT_SQUARE, cfg)
    assert a.trace.best_values == b.trace.best_values
    np.testing.assert_array_equal(a.best_point, b.best_point)


def test_threaded_evaluation_matches_serial():
    serial = ga_minimize(sphere, UNIT_SQUARE, GaConfig(population=16, generations=5, seed=3))
    threaded = ga_minimize(
        sphere, UNIT_SQUARE, GaConfig(population=16, generations=5, seed=3, workers=4)
    )
    assert serial.trace.best_values == threaded.trace.best_values


def test_exact_evaluation_count():
    calls = []

    def counted(z):
        calls.append(z)
        return sphere(z)

    cfg = GaConfig(population=13, generations=7, seed=1)
    ga_minimize(counted, UNIT_SQUARE, cfg)
    assert len(calls) == cfg.budget == 91


@pytest.mark.parametrize("width", [1e-9, 1e-3, 0.5])
def test_candidates_stay_in_bounds(width):
    lower = np.array([-6.0, 0.2, 1.0])
    upper = lower + width
    seen = []

    def recorder(z):
        seen.append(z.copy())
        return float(np.sum(z))

    ga_minimize(recorder, (lower, upper), GaConfig(population=12, generations=4, seed=5))
    seen = np.array(seen)
    assert np.all(seen >= lower)
    assert np.all(seen <= upper)


def test_infinite_and_nan_values_rank_worst():
    def partly_broken(z):
        if z[0] < 0.5:
            return np.nan if z[1] < 0.5 else np.inf
        return sphere(z)

    result = ga_minimize(partly_broken, UNIT_SQUARE, GaConfig(population=20, generations=5))
    assert np.isfinite(result.best_value)
    assert result.best_point[0] >= 0.5


def test_degenerate_bounds():
    with pytest.raises(OptimizerError):
        ga_minimize(sphere, (np.ones(2), np.ones(2)), GaConfig())


def test_zero_budget_rejected():
    with pytest.raises(ValidationError):
        GaConfig(population=0)
    with pytest.raises(OptimizerError):
        ga_minimize(sphere, UNIT_SQUARE, GaConfig.model_construct(population=0, generations=20))


def test_elitism_must_leave_room():
    with pytest.raises(ValidationError):
        GaConfig(population=4, elitism=4)
