"""Benchmark harness: sweep runner, report rows and tables."""

from src.bench.logger import BenchLogger
from src.bench.metrics import speedup_report, summarize
from src.bench.output import OutputFormatter
from src.bench.report import RowWriter, read_rows, write_models
from src.bench.runner import BenchRunner, derive_seed, run_bench
from src.bench.schema import CSV_FIELDS, BenchReportRow, SpeedupRow, SummaryRow

__all__ = [
    "BenchLogger",
    "BenchReportRow",
    "BenchRunner",
    "CSV_FIELDS",
    "OutputFormatter",
    "RowWriter",
    "SpeedupRow",
    "SummaryRow",
    "derive_seed",
    "read_rows",
    "run_bench",
    "speedup_report",
    "summarize",
    "write_models",
]
