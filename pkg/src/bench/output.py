"""Output formatting for benchmark progress and report tables."""

import logging

from src.bench.logger import BenchLogger
from src.bench.schema import BenchReportRow, SpeedupRow, SummaryRow

_SUMMARY_COLUMNS = (
    ("n", "n", "{:d}"),
    ("reps", "replications", "{:d}"),
    ("Time(sec)", "wall_time_seconds", "{:.2f}"),
    ("-2logL", "neg2_log_lik", "{:.2f}"),
    ("mu", "mu_hat", "{:.4f}"),
    ("sigma2", "sigma2_hat", "{:.4f}"),
    ("SSPE", "sspe", "{:.4f}"),
    ("jitter", "jitter_max", "{:.0e}"),
)

_SPEEDUP_COLUMNS = (
    ("n", "n", "{:d}"),
    ("reps", "replications", "{:d}"),
    ("baseline(s)", "baseline_time", "{:.3f}"),
    ("backend(s)", "backend_time", "{:.3f}"),
    ("ratio", "ratio", "{:.2f}"),
)


def format_table(models, columns) -> list[str]:
    """Right-aligned plain-text table lines."""
    header = [title for title, _, _ in columns]
    body = [[fmt.format(getattr(m, attr)) for _, attr, fmt in columns] for m in models]
    widths = [max(len(cell) for cell in column) for column in zip(header, *body)]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(header, widths))]
    lines.append("-" * len(lines[0]))
    lines.extend("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in body)
    return lines


class OutputFormatter:
    """Format and print benchmark progress and results."""

    def __init__(self, logger: BenchLogger | None = None):
        """
        Initialize output formatter.

        Args:
            logger: Optional BenchLogger for file logging
        """
        self.logger = logger

    def _output(self, message: str, also_print: bool = True) -> None:
        if self.logger:
            self.logger.log(message, also_print=also_print)
        else:
            print(message)

    def print_header(self, title: str, additional_info: str | None = None) -> None:
        """
        Print formatted section header.

        Args:
            title: Main title text
            additional_info: Optional additional information
        """
        self._output("=" * 70)
        self._output(title)
        if additional_info:
            self._output(additional_info)
        self._output("=" * 70)

    def print_row(self, row: BenchReportRow) -> None:
        """One progress line per finished fit."""
        if row.failed:
            self._output(
                f"[{row.backend}/{row.precision}] n={row.n} rep={row.replication}: "
                f"FAILED after {row.wall_time_seconds:.2f}s"
            )
            return
        self._output(
            f"[{row.backend}/{row.precision}] n={row.n} rep={row.replication}: "
            f"{row.wall_time_seconds:.2f}s  -2logL={row.neg2_log_lik:.2f}  "
            f"mu={row.mu_hat:.4f}  sigma2={row.sigma2_hat:.4f}  SSPE={row.sspe:.4f}"
        )

    def print_failure(self, message: str) -> None:
        """Warn about a fit that aborted; the sweep carries on."""
        if self.logger:
            self.logger.log(f"WARNING: {message}", also_print=True, level=logging.WARNING)
        else:
            print(f"WARNING: {message}")

    def print_summary(self, summary: list[SummaryRow]) -> None:
        """Summary table grouped by function, backend and precision."""
        groups: dict[tuple, list[SummaryRow]] = {}
        for row in summary:
            groups.setdefault((row.function, row.backend, row.precision), []).append(row)
        for (function, backend, precision), rows in groups.items():
            self._output("")
            self._output(f"{function} - {backend} ({precision} precision)")
            for line in format_table(sorted(rows, key=lambda r: r.n), _SUMMARY_COLUMNS):
                self._output(line)
        self._output("")

    def print_speedup(self, report: list[SpeedupRow]) -> None:
        """Speedup table per compared backend."""
        groups: dict[tuple, list[SpeedupRow]] = {}
        for row in report:
            groups.setdefault((row.function, row.baseline, row.backend), []).append(row)
        for (function, baseline, backend), rows in groups.items():
            self._output("")
            self._output(f"{function} - {baseline} / {backend}")
            for line in format_table(sorted(rows, key=lambda r: r.n), _SPEEDUP_COLUMNS):
                self._output(line)
        self._output("")
