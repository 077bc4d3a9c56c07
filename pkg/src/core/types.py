"""Domain types shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.errors import (
    DimensionMismatchError,
    HyperparameterError,
    NonFiniteEntryError,
    OutOfUnitCubeError,
)
from src.optimizer.schema import GaConfig

if TYPE_CHECKING:
    from src.backend.base import CorrelationFactor
    from src.optimizer.schema import GaTrace

Precision = Literal["single", "double"]
BackendId = Literal["reference", "parallel", "accelerated"]

DTYPES: dict[str, type[np.floating]] = {"single": np.float32, "double": np.float64}

DEFAULT_P = 1.95
UNIT_CUBE_TOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def check_unit_cube(points: np.ndarray) -> np.ndarray:
    """Reject coordinates outside [0, 1] beyond tolerance, clip the rest."""
    if not np.all(np.isfinite(points)):
        raise NonFiniteEntryError("coordinates must be finite")
    if points.size and (
        points.min() < -UNIT_CUBE_TOL or points.max() > 1.0 + UNIT_CUBE_TOL
    ):
        raise OutOfUnitCubeError(
            f"coordinates must lie in [0, 1], got range "
            f"[{points.min():.6g}, {points.max():.6g}]"
        )
    return np.clip(points, 0.0, 1.0)


@dataclass(frozen=True)
class Dataset:
    """Design inputs on the unit cube and the simulator responses."""

    inputs: np.ndarray
    outputs: np.ndarray

    @property
    def n(self) -> int:
        return self.inputs.shape[0]

    @property
    def d(self) -> int:
        return self.inputs.shape[1]

    def shifted(self, constant: float) -> Dataset:
        """Same design with `constant` added to every output."""
        return new_dataset(self.inputs, self.outputs + constant)


def new_dataset(inputs, outputs) -> Dataset:
    """
    Validate and build a Dataset.

    Args:
        inputs: n x d matrix of unit-cube coordinates
        outputs: n simulator responses

    Returns:
        Immutable Dataset

    Raises:
        DimensionMismatchError: shapes disagree or n < 2 or d < 1
        NonFiniteEntryError: any NaN/inf entry
        OutOfUnitCubeError: coordinate outside [0, 1] beyond 1e-12
    """
    x = np.array(inputs, dtype=np.float64)
    y = np.array(outputs, dtype=np.float64)

    if x.ndim != 2:
        raise DimensionMismatchError(f"inputs must be 2-D, got shape {x.shape}")
    if y.ndim != 1:
        raise DimensionMismatchError(f"outputs must be 1-D, got shape {y.shape}")
    if x.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"{x.shape[0]} input rows but {y.shape[0]} outputs"
        )
    if x.shape[0] < 2 or x.shape[1] < 1:
        raise DimensionMismatchError(
            f"need n >= 2 and d >= 1, got n={x.shape[0]}, d={x.shape[1]}"
        )
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise NonFiniteEntryError("dataset entries must be finite")

    return Dataset(inputs=_frozen(check_unit_cube(x)), outputs=_frozen(y))


@dataclass(frozen=True)
class Hyperparameters:
    """Power-exponential correlation parameters."""

    theta: np.ndarray
    p: float = DEFAULT_P
    nugget: float = 0.0

    def __post_init__(self):
        theta = np.array(self.theta, dtype=np.float64).reshape(-1)
        if theta.size == 0 or not np.all(np.isfinite(theta)):
            raise HyperparameterError("theta must be a non-empty finite vector")
        if np.any(theta < 0):
            raise HyperparameterError(f"theta must be nonnegative, got {theta}")
        if not 0.0 < self.p <= 2.0:
            raise HyperparameterError(f"p must lie in (0, 2], got {self.p}")
        if not (np.isfinite(self.nugget) and self.nugget >= 0.0):
            raise HyperparameterError(f"nugget must be >= 0, got {self.nugget}")
        object.__setattr__(self, "theta", _frozen(theta))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "nugget", float(self.nugget))

    @property
    def d(self) -> int:
        return self.theta.size


class FitConfig(BaseModel):
    """Settings for one GP fit."""

    model_config = ConfigDict(frozen=True)

    precision: Precision = Field(
        default="double", description="Floating-point width of the backend."
    )
    backend: BackendId = Field(
        default="parallel", description="Linear-algebra engine identifier."
    )
    ga: GaConfig = Field(default_factory=GaConfig)
    theta_bounds: tuple[float, float] | list[tuple[float, float]] = Field(
        default=(1e-6, 12.0),
        description=(
            "Search box for theta. A single (lower, upper) pair applies to "
            "every dimension; a list gives one pair per dimension."
        ),
    )
    seed: int = Field(default=0, ge=0, lt=2**64)
    p: float = Field(default=DEFAULT_P, gt=0.0, le=2.0)
    nugget: float = Field(default=0.0, ge=0.0)
    refine: bool = Field(
        default=False,
        description="Polish theta-hat with a short double-precision search.",
    )
    refine_evals: int = Field(default=20, ge=1)

    @field_validator("theta_bounds")
    @classmethod
    def _check_bounds(cls, value):
        pairs = [value] if isinstance(value, tuple) else value
        if not pairs:
            raise ValueError("theta_bounds must not be empty")
        for lower, upper in pairs:
            if not 0.0 < lower < upper:
                raise ValueError(f"need 0 < lower < upper, got ({lower}, {upper})")
        return value

    def bounds_for(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-dimension (lower, upper) arrays of theta bounds."""
        if isinstance(self.theta_bounds, tuple):
            pairs = [self.theta_bounds] * d
        else:
            pairs = list(self.theta_bounds)
            if len(pairs) != d:
                raise DimensionMismatchError(
                    f"theta_bounds has {len(pairs)} pairs for d={d}"
                )
        bounds = np.array(pairs, dtype=np.float64)
        return bounds[:, 0], bounds[:, 1]

    def log_bounds_for(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        """The GA search box: bounds_for(d) in log10 units."""
        lower, upper = self.bounds_for(d)
        return np.log10(lower), np.log10(upper)

    def hyperparameters(self, theta) -> Hyperparameters:
        """Hyperparameters at theta with this config's p and nugget."""
        return Hyperparameters(theta=theta, p=self.p, nugget=self.nugget)


@dataclass(frozen=True)
class GpModel:
    """
    A fitted GP emulator.

    `alpha` solves (R + jitter I) alpha = Y - 1 mu_hat and is what the
    kriging predictor multiplies cross-correlations by.
    """

    dataset: Dataset
    params: Hyperparameters
    mu_hat: float
    sigma2_hat: float
    neg2_log_lik: float
    factor: CorrelationFactor
    alpha: np.ndarray
    eval_count: int = 0
    jitter_max: float = 0.0
    trace: GaTrace | None = field(default=None, repr=False)

    @property
    def theta(self) -> np.ndarray:
        return self.params.theta
