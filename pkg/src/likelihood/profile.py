"""Profile likelihood: closed-form mu-hat, sigma2-hat and the -2 log L objective."""

import logging
from dataclasses import dataclass

import numpy as np

from src.backend.base import BaseBackend, CorrelationFactor
from src.core.errors import (
    DegenerateFactorError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
)
from src.core.types import Dataset, FitConfig

logger = logging.getLogger(__name__)

# floor for the quadratic form so constant responses keep a finite objective
_QF_FLOOR = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class ProfileEval:
    """Objective value and plug-in estimates at one theta."""

    theta: np.ndarray
    neg2_log_lik: float
    mu_hat: float
    sigma2_hat: float
    jitter_used: float

    @property
    def failed(self) -> bool:
        return not np.isfinite(self.neg2_log_lik)


@dataclass(frozen=True)
class Projections:
    """u = L^-1 Y and v = L^-1 1, reused by the plug-in estimators."""

    u: np.ndarray
    v: np.ndarray

    @property
    def vv(self) -> float:
        return float(self.v @ self.v)

    @property
    def vu(self) -> float:
        return float(self.v @ self.u)

    @property
    def uu(self) -> float:
        return float(self.u @ self.u)


def project(factor: CorrelationFactor, outputs: np.ndarray, backend: BaseBackend) -> Projections:
    """Two forward substitutions: L u = Y and L v = 1."""
    outputs = np.asarray(outputs)
    if outputs.shape != (factor.n,):
        raise DimensionMismatchError(
            f"outputs have shape {outputs.shape}, factor is {factor.n}x{factor.n}"
        )
    u = backend.solve_lower(factor, outputs).astype(np.float64)
    v = backend.solve_lower(factor, np.ones(factor.n)).astype(np.float64)
    return Projections(u=u, v=v)


def mu_from_projections(proj: Projections) -> float:
    """
    GLS mean v'u / v'v from the two forward solves.

    Raises:
        DegenerateFactorError: v'v is not positive
    """
    vv = proj.vv
    if not vv > 0:
        raise DegenerateFactorError(f"1'R^-1 1 = {vv:g} is not positive")
    return proj.vu / vv


def quadratic_form(proj: Projections, mu: float) -> float:
    """(Y - 1 mu)' R^-1 (Y - 1 mu) via u'u - 2 mu v'u + mu^2 v'v, clipped at 0."""
    return max(proj.uu - 2.0 * mu * proj.vu + mu * mu * proj.vv, 0.0)


def mu_hat(factor: CorrelationFactor, outputs: np.ndarray, backend: BaseBackend) -> float:
    """
    Generalized least-squares mean (1'R^-1 1)^-1 1'R^-1 Y.

    Args:
        factor: Cholesky factor of R
        outputs: response vector Y
        backend: backend that owns the factor (two triangular solves)

    Returns:
        mu-hat

    Raises:
        DegenerateFactorError: v'v <= 0
    """
    return mu_from_projections(project(factor, outputs, backend))


def sigma2_hat(
    factor: CorrelationFactor,
    outputs: np.ndarray,
    mu: float,
    backend: BaseBackend,
) -> float:
    """
    Process variance (Y - 1 mu)' R^-1 (Y - 1 mu) / n with one triangular solve.
    """
    residual = np.asarray(outputs, dtype=np.float64) - mu
    w = backend.solve_lower(factor, residual).astype(np.float64)
    return float(w @ w) / factor.n


def neg2_log_profile_from_factor(
    theta: np.ndarray,
    factor: CorrelationFactor,
    outputs: np.ndarray,
    backend: BaseBackend,
) -> ProfileEval:
    """Objective log|R| + n log(QF) for an existing factor (two solves)."""
    n = factor.n
    proj = project(factor, outputs, backend)
    mu = mu_from_projections(proj)
    qf = quadratic_form(proj, mu)
    value = factor.log_det + n * np.log(max(qf, _QF_FLOOR))
    return ProfileEval(
        theta=np.array(theta, dtype=np.float64),
        neg2_log_lik=float(value),
        mu_hat=mu,
        sigma2_hat=qf / n,
        jitter_used=factor.jitter_used,
    )


def failed_eval(theta: np.ndarray) -> ProfileEval:
    """Evaluation for a theta whose R never factorized: +inf, NaN estimates."""
    return ProfileEval(
        theta=np.array(theta, dtype=np.float64),
        neg2_log_lik=np.inf,
        mu_hat=np.nan,
        sigma2_hat=np.nan,
        jitter_used=np.nan,
    )


def evaluate_theta(
    theta: np.ndarray,
    dataset: Dataset,
    cfg: FitConfig,
    backend: BaseBackend,
) -> tuple[ProfileEval, CorrelationFactor | None]:
    """
    One objective evaluation that also hands back the factor.

    Builds R once and factorizes once; a factorization that fails at every
    jitter level, or a degenerate factor, yields +inf and no factor.
    """
    params = cfg.hyperparameters(theta)
    R = backend.build_correlation(dataset.inputs, params)
    try:
        factor = backend.factorize(R)
        result = neg2_log_profile_from_factor(params.theta, factor, dataset.outputs, backend)
    except (NotPositiveDefiniteError, DegenerateFactorError) as e:
        logger.debug("objective +inf at theta=%s: %s", params.theta, e)
        return failed_eval(params.theta), None
    return result, factor


def neg2_log_profile(
    theta: np.ndarray,
    dataset: Dataset,
    cfg: FitConfig,
    backend: BaseBackend,
) -> ProfileEval:
    """
    Profile objective -2 log L_theta up to additive constants.

    Args:
        theta: correlation decay vector
        dataset: training data
        cfg: supplies p and nugget
        backend: linear-algebra engine; its ledger gains one R build, one
            factorization and two triangular solves

    Returns:
        ProfileEval; +inf objective when R cannot be factorized
    """
    result, _ = evaluate_theta(theta, dataset, cfg, backend)
    return result
