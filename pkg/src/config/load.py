"""Configuration loader for benchmark runs."""

import os
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.core.errors import ConfigError
from src.core.types import DEFAULT_P, BackendId, FitConfig, Precision
from src.experiment.functions import get_simulator
from src.optimizer.schema import GaConfig

# largest n run without the explicit opt-in
DESK_SCALE_MAX_N = 1024

FunctionName = Literal["goldstein_price_log", "hartman6"]


def default_log_dir() -> str:
    return os.getenv("GP_BENCH_LOG_DIR", "./logs/")


class BenchConfig(BaseModel):
    """Benchmark protocol: sizes, replications, backends and fit settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    function: FunctionName = Field(description="Test simulator.")
    sizes: list[int] = Field(description="Design sizes n to sweep.")
    replications: int = Field(default=10, gt=0, description="Designs per size.")
    backends: list[BackendId] = Field(default_factory=lambda: ["reference", "parallel"])
    precision: Precision = "double"
    seed: int = Field(default=0, ge=0, lt=2**64, description="Base seed of the sweep.")
    output_path: str = Field(default="results/bench.csv")
    test_points: int = Field(default=1000, ge=1, description="Size of the shared test set.")
    design_exchange_budget: int = Field(default=10000, ge=0)
    test_exchange_budget: int = Field(default=2000, ge=0)
    ga: GaConfig = Field(default_factory=GaConfig)
    p: float = Field(default=DEFAULT_P, gt=0.0, le=2.0)
    nugget: float = Field(default=0.0, ge=0.0)
    theta_bounds: tuple[float, float] | list[tuple[float, float]] = (1e-6, 12.0)
    refine: bool = False
    refine_evals: int = Field(default=20, ge=1)
    workers: int | None = Field(
        default=None, ge=1, description="Backend threads; None reads GP_BENCH_WORKERS."
    )
    concurrent_replications: bool = Field(
        default=False,
        description="Run replications concurrently; timing columns become unreliable.",
    )
    allow_large: bool = Field(
        default=False, description=f"Permit n > {DESK_SCALE_MAX_N} (e.g. 4064)."
    )
    log_dir: str = Field(default_factory=default_log_dir)

    @model_validator(mode="after")
    def _check_protocol(self) -> "BenchConfig":
        _, d = get_simulator(self.function)
        if not self.sizes:
            raise ValueError("sizes must not be empty")
        too_small = [n for n in self.sizes if n < d + 2]
        if too_small:
            raise ValueError(f"{self.function} needs n >= {d + 2}, got {too_small}")
        too_large = [n for n in self.sizes if n > DESK_SCALE_MAX_N]
        if too_large and not self.allow_large:
            raise ValueError(
                f"sizes {too_large} exceed {DESK_SCALE_MAX_N}; set allow_large: true"
            )
        if not self.backends:
            raise ValueError("backends must not be empty")
        if len(set(self.backends)) != len(self.backends):
            raise ValueError(f"duplicate backends in {self.backends}")
        # the bounds check lives on FitConfig
        self.fit_config(seed=0)
        return self

    @property
    def dimension(self) -> int:
        return get_simulator(self.function)[1]

    def fit_config(self, seed: int, backend: BackendId = "parallel") -> FitConfig:
        """FitConfig for one fit of the sweep."""
        return FitConfig(
            precision=self.precision,
            backend=backend,
            ga=self.ga,
            theta_bounds=self.theta_bounds,
            seed=seed,
            p=self.p,
            nugget=self.nugget,
            refine=self.refine,
            refine_evals=self.refine_evals,
        )

    @classmethod
    def load(cls, config_path: str | Path) -> "BenchConfig":
        """
        Load configuration from a YAML file.

        Raises:
            ConfigError: missing file, malformed YAML or invalid fields
        """
        path = Path(config_path)
        if not path.is_file():
            raise ConfigError(f"config file '{path}' not found")
        try:
            with open(path) as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: malformed YAML: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a mapping of BenchConfig fields")
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"{path}: {e}") from e
