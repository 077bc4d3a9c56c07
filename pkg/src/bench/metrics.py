"""Aggregation of benchmark rows: per-cell means and backend speedups."""

import logging
from collections import defaultdict

import numpy as np

from src.bench.schema import BenchReportRow, SpeedupRow, SummaryRow

logger = logging.getLogger(__name__)

MEAN_COLUMNS = (
    "wall_time_seconds",
    "neg2_log_lik",
    "mu_hat",
    "sigma2_hat",
    "sspe",
    "jitter_max",
    "eval_count",
)

BASELINE_BACKEND = "reference"


def summarize(rows: list[BenchReportRow]) -> list[SummaryRow]:
    """
    Mean of every numeric column per (function, backend, precision, n).

    Failed rows are left out; a cell with only failed rows is dropped.

    Args:
        rows: report rows of one or more sweeps

    Returns:
        One SummaryRow per cell, in order of first appearance
    """
    cells: dict[tuple, list[BenchReportRow]] = defaultdict(list)
    for row in rows:
        if row.failed:
            logger.warning(
                "skipping failed row %s/%s n=%d rep=%d",
                row.function,
                row.backend,
                row.n,
                row.replication,
            )
            continue
        cells[(row.function, row.backend, row.precision, row.n)].append(row)

    summary = []
    for (function, backend, precision, n), members in cells.items():
        means = {
            column: float(np.mean([getattr(row, column) for row in members]))
            for column in MEAN_COLUMNS
        }
        summary.append(
            SummaryRow(
                function=function,
                backend=backend,
                precision=precision,
                n=n,
                replications=len(members),
                **means,
            )
        )
    return summary


def speedup_report(
    rows: list[BenchReportRow], baseline: str | None = None
) -> list[SpeedupRow]:
    """
    Ratio of mean wall times, baseline backend over each backend, per cell.

    Rows are paired on (function, precision, n, replication); a backend
    with no replication shared with the baseline in a cell is skipped with
    a warning.

    Args:
        rows: report rows covering the backends to compare
        baseline: numerator backend; defaults to "reference" when present,
            otherwise the first backend seen

    Returns:
        One SpeedupRow per (cell, backend), baseline included (ratio 1)
    """
    ok = [row for row in rows if not row.failed]
    if not ok:
        return []
    backends = list(dict.fromkeys(row.backend for row in ok))
    if baseline is None:
        baseline = BASELINE_BACKEND if BASELINE_BACKEND in backends else backends[0]

    times: dict[tuple, dict[str, dict[int, float]]] = defaultdict(lambda: defaultdict(dict))
    for row in ok:
        cell = (row.function, row.precision, row.n)
        times[cell][row.backend][row.replication] = row.wall_time_seconds

    report = []
    for (function, precision, n), per_backend in times.items():
        reference = per_backend.get(baseline, {})
        for backend in backends:
            if backend not in per_backend:
                continue
            shared = sorted(set(reference) & set(per_backend[backend]))
            if not shared:
                logger.warning(
                    "no %s/%s pair for %s n=%d; cell skipped",
                    baseline,
                    backend,
                    function,
                    n,
                )
                continue
            baseline_time = float(np.mean([reference[rep] for rep in shared]))
            backend_time = float(np.mean([per_backend[backend][rep] for rep in shared]))
            report.append(
                SpeedupRow(
                    function=function,
                    precision=precision,
                    n=n,
                    baseline=baseline,
                    backend=backend,
                    replications=len(shared),
                    baseline_time=baseline_time,
                    backend_time=backend_time,
                    ratio=baseline_time / backend_time,
                )
            )
    return report
