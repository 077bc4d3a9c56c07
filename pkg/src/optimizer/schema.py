"""Schema definitions for the genetic algorithm."""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GaConfig(BaseModel):
    """
    Real-coded GA settings.

    The objective is evaluated exactly population x generations times,
    the initial population included.
    """

    model_config = ConfigDict(frozen=True)

    population: int = Field(default=100, gt=0, description="Candidates per generation.")
    generations: int = Field(
        default=20, gt=0, description="Generations, counting the initial one."
    )
    crossover_rate: float = Field(
        default=0.9,
        ge=0.0,
        le=1.0,
        description="Probability that a child mixes two parents (uniform crossover).",
    )
    mutation_sigma: float = Field(
        default=0.15,
        gt=0.0,
        description="Std-dev of additive Gaussian mutation, in search-space units.",
    )
    mutation_rate: float | None = Field(
        default=None,
        ge=0.0,
        le=1.0,
        description="Per-coordinate mutation probability; None means 1/d.",
    )
    elitism: int = Field(default=1, ge=0, description="Best candidates carried over.")
    tournament_size: int = Field(default=2, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(
        default=1, ge=1, description="Concurrent objective evaluations per generation."
    )

    @model_validator(mode="after")
    def _check_elitism(self) -> "GaConfig":
        if self.elitism >= self.population:
            raise ValueError(
                f"elitism ({self.elitism}) must be smaller than population "
                f"({self.population})"
            )
        return self

    @property
    def budget(self) -> int:
        return self.population * self.generations


@dataclass(frozen=True)
class GaTrace:
    """Per-generation record of the search."""

    best_values: list[float] = field(default_factory=list)
    best_points: list[np.ndarray] = field(default_factory=list)
    eval_counts: list[int] = field(default_factory=list)

    @property
    def evaluations(self) -> int:
        return self.eval_counts[-1] if self.eval_counts else 0


@dataclass(frozen=True)
class GaResult:
    """Outcome of `ga_minimize`."""

    best_point: np.ndarray
    best_value: float
    trace: GaTrace
