"""Real-coded genetic algorithm over a bounded box."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import nullcontext

import numpy as np

from src.core.errors import OptimizerError
from src.experiment.design import latin_hypercube
from src.optimizer.schema import GaConfig, GaResult, GaTrace

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]

_INIT_STREAM = 0


def _slot_rng(seed: int, generation: int, slot: int) -> np.random.Generator:
    """Independent stream per (generation, candidate slot)."""
    return np.random.default_rng(np.random.SeedSequence([seed, generation, slot]))


def _check_bounds(bounds) -> tuple[np.ndarray, np.ndarray]:
    lower, upper = (np.asarray(b, dtype=np.float64).reshape(-1) for b in bounds)
    if lower.shape != upper.shape or lower.size == 0:
        raise OptimizerError(
            f"bounds must be two equal-length vectors, got {lower.shape} and {upper.shape}"
        )
    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise OptimizerError("bounds must be finite")
    if np.any(lower >= upper):
        raise OptimizerError(f"degenerate bounds: lower {lower} upper {upper}")
    return lower, upper


def _evaluate(
    objective: Objective, candidates: np.ndarray, executor: Executor | None
) -> np.ndarray:
    points = [row.copy() for row in candidates]
    if executor is None:
        values = [objective(point) for point in points]
    else:
        values = list(executor.map(objective, points))
    values = np.asarray(values, dtype=np.float64)
    # NaN and +inf both rank worst
    return np.where(np.isnan(values), np.inf, values)


def _tournament(rng: np.random.Generator, values: np.ndarray, size: int) -> int:
    picks = rng.integers(values.size, size=size)
    return int(picks[np.argmin(values[picks])])


def _breed(
    rng: np.random.Generator,
    population: np.ndarray,
    values: np.ndarray,
    cfg: GaConfig,
    mutation_rate: float,
    lower: np.ndarray,
    upper: np.ndarray,
) -> np.ndarray:
    d = population.shape[1]
    first = population[_tournament(rng, values, cfg.tournament_size)]
    second = population[_tournament(rng, values, cfg.tournament_size)]

    if rng.random() < cfg.crossover_rate:
        child = np.where(rng.random(d) < 0.5, first, second)
    else:
        child = first.copy()

    mutate = rng.random(d) < mutation_rate
    child = child + mutate * rng.normal(0.0, cfg.mutation_sigma, d)
    return np.clip(child, lower, upper)


def ga_minimize(
    objective: Objective,
    bounds: Sequence[np.ndarray],
    cfg: GaConfig,
) -> GaResult:
    """
    Minimize a black-box objective with a real-coded GA.

    Args:
        objective: maps a point in the box to a real value; +inf is a valid
            (worst) fitness
        bounds: (lower, upper) vectors of the search box
        cfg: GA settings; the objective is called exactly cfg.budget times

    Returns:
        GaResult with the best point, its value and a per-generation trace

    Raises:
        OptimizerError: degenerate bounds or empty budget
    """
    lower, upper = _check_bounds(bounds)
    if cfg.population < 1 or cfg.generations < 1:
        raise OptimizerError(f"evaluation budget must be positive, got {cfg.budget}")

    d = lower.size
    mutation_rate = cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / d
    pool = ThreadPoolExecutor(cfg.workers) if cfg.workers > 1 else nullcontext()

    with pool as executor:
        init_rng = _slot_rng(cfg.seed, _INIT_STREAM, 0)
        population = lower + (upper - lower) * latin_hypercube(
            cfg.population, d, init_rng
        )
        values = _evaluate(objective, population, executor)
        evaluations = cfg.population

        best_index = int(np.argmin(values))
        best_point, best_value = population[best_index].copy(), values[best_index]
        trace = GaTrace()
        trace.best_values.append(float(best_value))
        trace.best_points.append(best_point.copy())
        trace.eval_counts.append(evaluations)

        for generation in range(1, cfg.generations):
            children = np.array(
                [
                    _breed(
                        _slot_rng(cfg.seed, generation, slot),
                        population,
                        values,
                        cfg,
                        mutation_rate,
                        lower,
                        upper,
                    )
                    for slot in range(cfg.population)
                ]
            )
            child_values = _evaluate(objective, children, executor)
            evaluations += cfg.population

            elites = np.argsort(values, kind="stable")[: cfg.elitism]
            pool_points = np.concatenate([population[elites], children])
            pool_values = np.concatenate([values[elites], child_values])
            survivors = np.argsort(pool_values, kind="stable")[: cfg.population]
            population, values = pool_points[survivors], pool_values[survivors]

            if values[0] < best_value:
                best_point, best_value = population[0].copy(), values[0]
            trace.best_values.append(float(values[0]))
            trace.best_points.append(population[0].copy())
            trace.eval_counts.append(evaluations)
            logger.debug(
                "generation %d/%d: best %.6g (%d evaluations)",
                generation + 1,
                cfg.generations,
                values[0],
                evaluations,
            )

    return GaResult(best_point=best_point, best_value=float(best_value), trace=trace)
