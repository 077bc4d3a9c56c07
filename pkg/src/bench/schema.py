"""Report rows written and read by the benchmark."""

import math

from pydantic import BaseModel, Field


class BenchReportRow(BaseModel):
    """One (function, backend, n, replication) result; field order is the CSV header."""

    function: str
    backend: str
    precision: str
    n: int = Field(ge=2)
    replication: int = Field(ge=0)
    wall_time_seconds: float = Field(description="Fit plus prediction, monotonic clock.")
    neg2_log_lik: float
    mu_hat: float
    sigma2_hat: float
    sspe: float
    jitter_max: float = Field(description="Largest jitter any likelihood evaluation needed.")
    eval_count: int = Field(ge=0, description="Objective evaluations spent by the fit.")

    @property
    def failed(self) -> bool:
        return math.isnan(self.neg2_log_lik)


CSV_FIELDS: list[str] = list(BenchReportRow.model_fields)


class SummaryRow(BaseModel):
    """Means over replications for one (function, backend, precision, n)."""

    function: str
    backend: str
    precision: str
    n: int
    replications: int
    wall_time_seconds: float
    neg2_log_lik: float
    mu_hat: float
    sigma2_hat: float
    sspe: float
    jitter_max: float
    eval_count: float


class SpeedupRow(BaseModel):
    """Mean wall-time ratio baseline / backend over paired replications."""

    function: str
    precision: str
    n: int
    baseline: str
    backend: str
    replications: int
    baseline_time: float
    backend_time: float
    ratio: float
