import csv
import math
import os

import numpy as np
import pytest
import yaml

from src.bench.logger import BenchLogger
from src.bench.metrics import speedup_report, summarize
from src.bench.output import OutputFormatter
from src.bench.report import RowWriter, read_rows
from src.bench.runner import BenchRunner, derive_seed, run_bench
from src.bench.schema import CSV_FIELDS, BenchReportRow
from src.cli import BenchCLI
from src.config.load import BenchConfig
from src.core.errors import ConfigError, FitAbortedError
from src.core.io import load_dataset_csv
from src.optimizer.schema import GaConfig

HEADER = (
    "function,backend,precision,n,replication,wall_time_seconds,neg2_log_lik,"
    "mu_hat,sigma2_hat,sspe,jitter_max,eval_count"
)
NON_TIMING = [field for field in CSV_FIELDS if field != "wall_time_seconds"]


def _row(**overrides) -> BenchReportRow:
    values = {
        "function": "goldstein_price_log",
        "backend": "reference",
        "precision": "double",
        "n": 16,
        "replication": 0,
        "wall_time_seconds": 1.0,
        "neg2_log_lik": 50.0,
        "mu_hat": 5.0,
        "sigma2_hat": 2.0,
        "sspe": 900.0,
        "jitter_max": 0.0,
        "eval_count": 2000,
    }
    values.update(overrides)
    return BenchReportRow(**values)


def _quick_config(tmp_path, **overrides) -> BenchConfig:
    values = {
        "function": "goldstein_price_log",
        "sizes": [16, 24],
        "replications": 2,
        "backends": ["reference", "parallel"],
        "seed": 17,
        "output_path": str(tmp_path / "bench.csv"),
        "test_points": 40,
        "design_exchange_budget": 200,
        "test_exchange_budget": 50,
        "ga": GaConfig(population=10, generations=3),
        "workers": 2,
        "log_dir": str(tmp_path / "logs"),
    }
    values.update(overrides)
    return BenchConfig(**values)


def test_header_matches_report_columns():
    assert ",".join(CSV_FIELDS) == HEADER


def test_protocol_row_count(tmp_path):
    cfg = _quick_config(
        tmp_path,
        sizes=[16, 32, 64],
        backends=["reference"],
        ga=GaConfig(),
        design_exchange_budget=100,
    )
    rows = run_bench(cfg)
    assert len(rows) == 6
    assert all(row.eval_count == 2000 for row in rows)
    assert all(row.wall_time_seconds > 0 for row in rows)


def test_rows_stream_to_csv(tmp_path):
    cfg = _quick_config(tmp_path)
    rows = run_bench(cfg)
    path = tmp_path / "bench.csv"
    assert path.read_text().splitlines()[0] == HEADER
    assert read_rows(path) == rows
    assert [(r.n, r.replication, r.backend) for r in rows] == [
        (n, rep, backend)
        for n in (16, 24)
        for rep in (0, 1)
        for backend in ("reference", "parallel")
    ]


def test_rerun_is_bitwise_identical(tmp_path):
    first = run_bench(_quick_config(tmp_path, output_path=str(tmp_path / "a.csv")))
    second = run_bench(_quick_config(tmp_path, output_path=str(tmp_path / "b.csv")))
    for a, b in zip(first, second, strict=True):
        assert [getattr(a, f) for f in NON_TIMING] == [getattr(b, f) for f in NON_TIMING]


def test_backends_agree_per_cell(tmp_path):
    rows = run_bench(_quick_config(tmp_path))
    for ref, par in zip(rows[::2], rows[1::2], strict=True):
        assert (ref.backend, par.backend) == ("reference", "parallel")
        assert abs(par.neg2_log_lik - ref.neg2_log_lik) <= 1e-8 * abs(ref.neg2_log_lik)


def test_concurrent_replications_keep_row_order(tmp_path):
    serial = run_bench(_quick_config(tmp_path, output_path=str(tmp_path / "a.csv")))
    concurrent = run_bench(
        _quick_config(
            tmp_path, output_path=str(tmp_path / "b.csv"), concurrent_replications=True
        )
    )
    for a, b in zip(serial, concurrent, strict=True):
        assert [getattr(a, f) for f in NON_TIMING] == [getattr(b, f) for f in NON_TIMING]


def test_test_set_shared_across_sizes(tmp_path):
    runner = BenchRunner(_quick_config(tmp_path))
    assert runner.test_set(1) is runner.test_set(1)
    assert not np.array_equal(runner.test_set(0).inputs, runner.test_set(1).inputs)
    assert not np.array_equal(runner.design(16, 0).inputs, runner.design(16, 1).inputs)


def test_derive_seed_is_stable():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert derive_seed(1, 2, 3) != derive_seed(1, 2, 4)


def test_aborted_fit_becomes_failed_row(tmp_path, monkeypatch):
    def abort(*args, **kwargs):
        raise FitAbortedError("no finite candidate")

    monkeypatch.setattr("src.bench.runner.fit_gp", abort)
    rows = run_bench(_quick_config(tmp_path, sizes=[16], replications=1))
    assert all(row.failed for row in rows)
    assert all(math.isnan(row.sspe) for row in rows)
    assert all(row.eval_count == 30 for row in rows)
    assert summarize(rows) == []
    assert read_rows(tmp_path / "bench.csv")[0].failed


def test_summarize_single_row():
    row = _row()
    (summary,) = summarize([row])
    assert summary.replications == 1
    for column in ("wall_time_seconds", "neg2_log_lik", "mu_hat", "sigma2_hat", "sspe"):
        assert getattr(summary, column) == getattr(row, column)


def test_summarize_means():
    (summary,) = summarize(
        [_row(wall_time_seconds=1.0), _row(replication=1, wall_time_seconds=3.0)]
    )
    assert summary.wall_time_seconds == 2.0
    assert summary.replications == 2


def test_summarize_groups_cells():
    rows = [_row(n=n, backend=b) for n in (16, 32) for b in ("reference", "parallel")]
    assert [(s.backend, s.n) for s in summarize(rows)] == [
        ("reference", 16),
        ("parallel", 16),
        ("reference", 32),
        ("parallel", 32),
    ]


def test_speedup_against_itself():
    rows = [_row(replication=r, wall_time_seconds=1.0 + r) for r in range(3)]
    assert [s.ratio for s in speedup_report(rows)] == [1.0]


def test_speedup_ratio():
    rows = [
        _row(backend="reference", wall_time_seconds=4.0),
        _row(backend="parallel", wall_time_seconds=1.0),
    ]
    report = {s.backend: s for s in speedup_report(rows)}
    assert report["parallel"].ratio == 4.0
    assert report["parallel"].baseline == "reference"


def test_speedup_skips_unpaired_cells(caplog):
    rows = [
        _row(backend="reference", n=16),
        _row(backend="parallel", n=16),
        _row(backend="parallel", n=32),
    ]
    report = speedup_report(rows)
    assert {(s.backend, s.n) for s in report} == {("reference", 16), ("parallel", 16)}
    assert "n=32" in caplog.text


def test_config_rejects_small_and_large_sizes():
    with pytest.raises(ValueError, match="n >= 8"):
        BenchConfig(function="hartman6", sizes=[4])
    with pytest.raises(ValueError, match="allow_large"):
        BenchConfig(function="hartman6", sizes=[4064])
    assert BenchConfig(function="hartman6", sizes=[4064], allow_large=True).dimension == 6


def test_config_rejects_duplicate_backends():
    with pytest.raises(ValueError):
        BenchConfig(function="goldstein_price_log", sizes=[16], backends=["parallel", "parallel"])


def test_config_load(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "function": "goldstein_price_log",
                "sizes": [16],
                "theta_bounds": [1e-6, 12.0],
                "ga": {"population": 20},
            }
        )
    )
    cfg = BenchConfig.load(path)
    assert cfg.ga.population == 20
    assert cfg.fit_config(seed=1).theta_bounds == (1e-6, 12.0)


@pytest.mark.parametrize(
    "content",
    ["function: [unclosed", "- just\n- a list\n", "function: goldstein_price_log\nsizes: []\n"],
)
def test_config_load_errors(tmp_path, content):
    path = tmp_path / "cfg.yaml"
    path.write_text(content)
    with pytest.raises(ConfigError):
        BenchConfig.load(path)


def _shipped(name: str) -> str:
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return os.path.join(root, "configs", f"{name}.yaml")


def test_shipped_configs_are_valid():
    for name in ("goldstein_price", "hartman6"):
        BenchConfig.load(_shipped(name))


def test_cli_missing_config_exits_2(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        BenchCLI().run(config=str(tmp_path / "missing.yaml"))
    assert excinfo.value.code == 2


def test_cli_invalid_config_exits_2(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text("function: hartman6\nsizes: [4]\n")
    with pytest.raises(SystemExit) as excinfo:
        BenchCLI().run(config=str(path))
    assert excinfo.value.code == 2


def test_cli_run_summarize_and_speedup(tmp_path, capsys):
    cfg = _quick_config(tmp_path, sizes=[16], replications=1)
    path = tmp_path / "cfg.yaml"
    path.write_text(yaml.safe_dump(cfg.model_dump(mode="json")))
    cli = BenchCLI()
    cli.run(config=str(path))
    assert "Time(sec)" in capsys.readouterr().out

    cli.summarize(str(tmp_path / "bench.csv"))
    with open(tmp_path / "bench_summary.csv", newline="") as f:
        summary = list(csv.DictReader(f))
    assert [row["backend"] for row in summary] == ["reference", "parallel"]

    cli.speedup(str(tmp_path / "bench.csv"))
    assert (tmp_path / "bench_speedup.csv").is_file()
    assert list((tmp_path / "logs").glob("bench_goldstein_price_log_*.log"))


def test_cli_design_export(tmp_path):
    BenchCLI().design(str(tmp_path / "design.csv"), function="hartman6", n=12, exchange_budget=100)
    dataset = load_dataset_csv(tmp_path / "design.csv")
    assert (dataset.n, dataset.d) == (12, 6)


def test_cli_surface_export(tmp_path):
    out = tmp_path / "surface.csv"
    BenchCLI().surface(str(out), n=10, points=3, zoom=True, backend="reference")
    lines = out.read_text().splitlines()
    assert lines[0] == "theta1,theta2,neg2_log_lik,mu_hat,sigma2_hat,jitter_used"
    assert len(lines) == 1 + 9


def test_output_tables_through_logger(tmp_path, capsys):
    logger = BenchLogger(str(tmp_path), "unit")
    output = OutputFormatter(logger)
    rows = [_row(n=16), _row(n=32, sspe=float("nan"), neg2_log_lik=float("nan"))]
    for row in rows:
        output.print_row(row)
    output.print_summary(summarize(rows))
    logger.close()
    printed = capsys.readouterr().out
    assert "FAILED" in printed
    assert "-2logL" in printed
    assert "SSPE" in open(logger.get_log_path()).read()


def test_failure_logged_as_warning(tmp_path, capsys):
    logger = BenchLogger(str(tmp_path), "unit")
    OutputFormatter(logger).print_failure("parallel n=16 rep=0: no factor")
    logger.close()
    assert "WARNING: parallel n=16 rep=0" in capsys.readouterr().out
    assert " - WARNING - " in open(logger.get_log_path()).read()


def test_row_writer_flushes_each_row(tmp_path):
    path = tmp_path / "rows.csv"
    with RowWriter(path) as writer:
        writer.write(_row())
        assert len(path.read_text().splitlines()) == 2


@pytest.mark.slow
def test_goldstein_price_sspe_trend(tmp_path):
    cfg = BenchConfig.load(_shipped("goldstein_price")).model_copy(
        update={"backends": ["parallel"], "output_path": str(tmp_path / "gp.csv")}
    )
    means = {s.n: s.sspe for s in summarize(run_bench(cfg))}
    sizes = sorted(means)
    assert all(means[a] > means[b] for a, b in zip(sizes, sizes[1:]))
    assert means[512] < 50


@pytest.mark.slow
def test_hartman6_sspe_trend(tmp_path):
    cfg = BenchConfig.load(_shipped("hartman6")).model_copy(
        update={"backends": ["parallel"], "output_path": str(tmp_path / "h6.csv")}
    )
    means = {s.n: s.sspe for s in summarize(run_bench(cfg))}
    assert means[256] < means[64]
    assert means[1024] < 10


@pytest.mark.slow
@pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="needs at least 4 cores")
def test_parallel_faster_at_1024(tmp_path):
    cfg = BenchConfig(
        function="hartman6",
        sizes=[1024],
        replications=1,
        backends=["reference", "parallel"],
        output_path=str(tmp_path / "speed.csv"),
        test_points=100,
        ga=GaConfig(population=10, generations=2),
    )
    report = {s.backend: s for s in speedup_report(run_bench(cfg))}
    assert report["parallel"].ratio > 1.0
