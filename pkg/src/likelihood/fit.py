"""GP fitting: GA search over log10(theta) coupled to the profile objective."""

import itertools
import logging
import threading
from collections.abc import Sequence

import numpy as np

from src.backend.base import BackendKind, BaseBackend, CorrelationFactor
from src.backend.factory import create_backend
from src.core.errors import ConfigError, FitAbortedError, NotPositiveDefiniteError
from src.core.types import Dataset, FitConfig, GpModel
from src.likelihood.profile import ProfileEval, evaluate_theta
from src.optimizer.ga import ga_minimize

logger = logging.getLogger(__name__)

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class _BestEvaluations:
    """
    Keeps the factor of the lowest objective seen so far, keyed by the exact point.

    All points tied at the minimum are kept so the optimizer's choice can
    always be looked up without another factorization.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._best = np.inf
        self._entries: dict[bytes, tuple[ProfileEval, CorrelationFactor]] = {}
        self.jitter_max = 0.0

    def offer(self, point: np.ndarray, result: ProfileEval, factor: CorrelationFactor | None):
        if factor is None:
            return
        value = result.neg2_log_lik
        with self._lock:
            self.jitter_max = max(self.jitter_max, result.jitter_used)
            if value < self._best:
                self._best = value
                self._entries = {point.tobytes(): (result, factor)}
            elif value == self._best:
                self._entries[point.tobytes()] = (result, factor)

    def lookup(self, point: np.ndarray) -> tuple[ProfileEval, CorrelationFactor] | None:
        with self._lock:
            return self._entries.get(np.asarray(point, dtype=np.float64).tobytes())


def _log_objective(dataset: Dataset, cfg: FitConfig, backend: BaseBackend, best: _BestEvaluations):
    def objective(z: np.ndarray) -> float:
        result, factor = evaluate_theta(10.0**z, dataset, cfg, backend)
        best.offer(z, result, factor)
        return result.neg2_log_lik

    return objective


def assemble_model(
    dataset: Dataset,
    cfg: FitConfig,
    result: ProfileEval,
    factor: CorrelationFactor,
    backend: BaseBackend,
    **extra,
) -> GpModel:
    """GpModel from an evaluated theta; solves R alpha = Y - 1 mu (two solves)."""
    alpha = backend.solve_full(factor, dataset.outputs - result.mu_hat).astype(np.float64)
    alpha.setflags(write=False)
    return GpModel(
        dataset=dataset,
        params=cfg.hyperparameters(result.theta),
        mu_hat=result.mu_hat,
        sigma2_hat=result.sigma2_hat,
        neg2_log_lik=result.neg2_log_lik,
        factor=factor,
        alpha=alpha,
        **extra,
    )


def model_at_theta(
    dataset: Dataset,
    theta: np.ndarray,
    cfg: FitConfig,
    backend: BaseBackend,
) -> GpModel:
    """
    Build the model for a fixed theta, without any search.

    Raises:
        NotPositiveDefiniteError: R cannot be factorized at this theta
    """
    result, factor = evaluate_theta(theta, dataset, cfg, backend)
    if factor is None:
        raise NotPositiveDefiniteError(f"cannot factorize R at theta={theta}")
    return assemble_model(
        dataset, cfg, result, factor, backend, eval_count=1, jitter_max=factor.jitter_used
    )


def refine_theta(
    dataset: Dataset,
    z_start: np.ndarray,
    cfg: FitConfig,
    backend: BaseBackend,
) -> tuple[np.ndarray, ProfileEval, CorrelationFactor]:
    """
    Coordinate-wise golden-section polish of log10(theta) in double precision.

    Spends exactly cfg.refine_evals objective evaluations: one at the start
    point, the rest split over coordinates within +/- 2 mutation_sigma of
    it. Moves are kept only when they improve the objective.

    Args:
        dataset: training data
        z_start: log10(theta) found by the GA
        cfg: bounds, p, nugget and the evaluation budget
        backend: backend of the fit; a double-precision twin is used if needed

    Returns:
        (log10 theta, its ProfileEval, its factor)
    """
    owned = backend.precision != "double"
    polish = create_backend(backend.kind, "double", backend.workers) if owned else backend
    lower, upper = cfg.log_bounds_for(dataset.d)
    best = _BestEvaluations()
    objective = _log_objective(dataset, cfg, polish, best)

    try:
        z = np.array(z_start, dtype=np.float64)
        current = objective(z)
        remaining = cfg.refine_evals - 1
        d = z.size
        per_coordinate = [remaining // d + (1 if k < remaining % d else 0) for k in range(d)]

        for k, budget in enumerate(per_coordinate):
            if budget == 0:
                continue
            half_width = 2.0 * cfg.ga.mutation_sigma
            a, b = max(lower[k], z[k] - half_width), min(upper[k], z[k] + half_width)

            def along(t: float, k=k) -> tuple[float, np.ndarray]:
                trial = z.copy()
                trial[k] = t
                return objective(trial), trial

            c, e = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
            fc, zc = along(c)
            candidates = [(fc, zc)]
            spent = 1
            if spent < budget:
                fe, ze = along(e)
                candidates.append((fe, ze))
                spent += 1
            while spent < budget:
                if fc < fe:
                    b, e, fe = e, c, fc
                    c = b - GOLDEN * (b - a)
                    fc, trial = along(c)
                    candidates.append((fc, trial))
                else:
                    a, c, fc = c, e, fe
                    e = a + GOLDEN * (b - a)
                    fe, trial = along(e)
                    candidates.append((fe, trial))
                spent += 1

            value, trial = min(candidates, key=lambda item: item[0])
            if value < current:
                current, z = value, trial
    finally:
        if owned:
            polish.close()

    found = best.lookup(z)
    if found is None:
        raise FitAbortedError("refinement produced no finite objective value")
    result, factor = found
    logger.info("refined -2logL to %.6g at theta=%s", result.neg2_log_lik, 10.0**z)
    return z, result, factor


def fit_gp(dataset: Dataset, cfg: FitConfig, backend: BaseBackend) -> GpModel:
    """
    Fit a GP by minimizing -2 log L_theta with the genetic algorithm.

    The GA runs in log10(theta) space within cfg.theta_bounds for exactly
    cfg.ga.budget evaluations; the factor at the winning theta is reused, so
    the ledger shows budget R builds and factorizations.

    Args:
        dataset: training data
        cfg: fit settings; cfg.seed seeds the GA
        backend: linear-algebra engine, kind and precision must match cfg

    Returns:
        Fitted GpModel

    Raises:
        ConfigError: backend kind or precision differs from cfg
        FitAbortedError: every candidate failed to factorize
    """
    if backend.kind != BackendKind(cfg.backend):
        raise ConfigError(f"backend {backend.kind.value} != configured {cfg.backend}")
    if backend.precision != cfg.precision:
        raise ConfigError(
            f"backend precision {backend.precision} != configured {cfg.precision}"
        )

    best = _BestEvaluations()
    objective = _log_objective(dataset, cfg, backend, best)
    ga_cfg = cfg.ga.model_copy(update={"seed": cfg.seed})
    outcome = ga_minimize(objective, cfg.log_bounds_for(dataset.d), ga_cfg)

    if not np.isfinite(outcome.best_value):
        raise FitAbortedError(
            f"all {outcome.trace.evaluations} candidates failed to factorize R "
            f"(n={dataset.n}, d={dataset.d})"
        )

    z = outcome.best_point
    found = best.lookup(z)
    if found is None:
        logger.warning("best factor not cached; re-evaluating theta=%s", 10.0**z)
        found = evaluate_theta(10.0**z, dataset, cfg, backend)
    result, factor = found
    eval_count = outcome.trace.evaluations
    jitter_max = best.jitter_max

    if cfg.refine:
        z, result, factor = refine_theta(dataset, z, cfg, backend)
        eval_count += cfg.refine_evals
        jitter_max = max(jitter_max, factor.jitter_used)

    logger.info(
        "fit n=%d d=%d: -2logL=%.6g mu=%.6g sigma2=%.6g theta=%s",
        dataset.n,
        dataset.d,
        result.neg2_log_lik,
        result.mu_hat,
        result.sigma2_hat,
        np.array2string(result.theta, precision=4),
    )
    return assemble_model(
        dataset,
        cfg,
        result,
        factor,
        backend,
        eval_count=eval_count,
        jitter_max=jitter_max,
        trace=outcome.trace,
    )


def likelihood_surface(
    dataset: Dataset,
    cfg: FitConfig,
    backend: BaseBackend,
    axes: Sequence[np.ndarray],
) -> list[ProfileEval]:
    """
    Objective on the Cartesian grid of per-dimension theta values.

    Args:
        dataset: training data
        cfg: supplies p and nugget
        backend: linear-algebra engine
        axes: one 1-D array of theta values per input dimension

    Returns:
        ProfileEval per grid point, last axis varying fastest
    """
    if len(axes) != dataset.d:
        raise ConfigError(f"need {dataset.d} grid axes, got {len(axes)}")
    return [
        evaluate_theta(np.array(theta), dataset, cfg, backend)[0]
        for theta in itertools.product(*axes)
    ]
