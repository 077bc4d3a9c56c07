"""Benchmark sweep runner: designs, fits, predictions and timed report rows."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.backend.factory import create_backend
from src.bench.output import OutputFormatter
from src.bench.report import RowWriter
from src.bench.schema import BenchReportRow
from src.config.load import BenchConfig
from src.core.errors import FitAbortedError
from src.core.types import Dataset, new_dataset
from src.experiment.design import DesignSpec, maximin_lhd
from src.experiment.functions import get_simulator
from src.likelihood.fit import fit_gp
from src.predictor.kriging import predict_set

logger = logging.getLogger(__name__)

# seed streams
DESIGN_STREAM = 1
TEST_STREAM = 2
GA_STREAM = 3


def derive_seed(*parts: int) -> int:
    """64-bit seed derived from the given integers."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class HeldOutSet:
    """Held-out inputs and simulator values shared by every backend."""

    inputs: np.ndarray
    truth: np.ndarray


class BenchRunner:
    """Run a benchmark sweep over sizes, replications and backends."""

    def __init__(self, cfg: BenchConfig, output: OutputFormatter | None = None):
        """
        Initialize benchmark runner.

        Args:
            cfg: validated benchmark protocol
            output: Optional OutputFormatter instance (creates default if not provided)
        """
        self.cfg = cfg
        self.output = output or OutputFormatter()
        self.simulator, self.d = get_simulator(cfg.function)
        self._test_sets: dict[int, HeldOutSet] = {}

    def design(self, n: int, replication: int) -> Dataset:
        """Training data for one (n, replication) cell."""
        spec = DesignSpec(
            n=n,
            d=self.d,
            seed=derive_seed(self.cfg.seed, DESIGN_STREAM, n, replication),
            exchange_budget=self.cfg.design_exchange_budget,
        )
        inputs = maximin_lhd(spec)
        return new_dataset(inputs, self.simulator(inputs))

    def test_set(self, replication: int) -> HeldOutSet:
        """Test set of one replication, identical across sizes and backends."""
        if replication not in self._test_sets:
            spec = DesignSpec(
                n=self.cfg.test_points,
                d=self.d,
                seed=derive_seed(self.cfg.seed, TEST_STREAM, replication),
                exchange_budget=self.cfg.test_exchange_budget,
            )
            inputs = maximin_lhd(spec)
            self._test_sets[replication] = HeldOutSet(inputs, self.simulator(inputs))
        return self._test_sets[replication]

    def _fit_one(
        self, dataset: Dataset, tests: HeldOutSet, backend_id: str, replication: int
    ) -> BenchReportRow:
        cfg = self.cfg
        fit_cfg = cfg.fit_config(
            seed=derive_seed(cfg.seed, GA_STREAM, dataset.n, replication),
            backend=backend_id,
        )
        cell = {
            "function": cfg.function,
            "backend": backend_id,
            "precision": cfg.precision,
            "n": dataset.n,
            "replication": replication,
        }
        with create_backend(backend_id, cfg.precision, cfg.workers) as backend:
            start = time.perf_counter()
            try:
                model = fit_gp(dataset, fit_cfg, backend)
                result = predict_set(model, tests.inputs, tests.truth, workers=backend.workers)
            except FitAbortedError as e:
                elapsed = time.perf_counter() - start
                self.output.print_failure(
                    f"{backend_id} n={dataset.n} rep={replication}: {e}"
                )
                evaluations = fit_cfg.ga.budget
                if fit_cfg.refine:
                    evaluations += fit_cfg.refine_evals
                return BenchReportRow(
                    **cell,
                    wall_time_seconds=elapsed,
                    neg2_log_lik=math.nan,
                    mu_hat=math.nan,
                    sigma2_hat=math.nan,
                    sspe=math.nan,
                    jitter_max=math.nan,
                    eval_count=evaluations,
                )
            elapsed = time.perf_counter() - start

        return BenchReportRow(
            **cell,
            wall_time_seconds=elapsed,
            neg2_log_lik=model.neg2_log_lik,
            mu_hat=model.mu_hat,
            sigma2_hat=model.sigma2_hat,
            sspe=result.sspe,
            jitter_max=model.jitter_max,
            eval_count=model.eval_count,
        )

    def run_replication(self, replication: int, n: int) -> list[BenchReportRow]:
        """All backends on the same design and test set."""
        dataset = self.design(n, replication)
        tests = self.test_set(replication)
        return [
            self._fit_one(dataset, tests, backend_id, replication)
            for backend_id in self.cfg.backends
        ]

    def run(self, writer: RowWriter | None = None) -> list[BenchReportRow]:
        """
        Sweep every size and replication, writing rows as they finish.

        Args:
            writer: optional incremental CSV sink

        Returns:
            Rows in (n, replication, backend) order
        """
        cfg = self.cfg
        rows: list[BenchReportRow] = []

        def emit(batch: list[BenchReportRow]) -> None:
            for row in batch:
                self.output.print_row(row)
                if writer is not None:
                    writer.write(row)
            rows.extend(batch)

        # test sets are built up front so concurrent replications never race on the cache
        for replication in range(cfg.replications):
            self.test_set(replication)

        for n in cfg.sizes:
            logger.info("%s n=%d: %d replications", cfg.function, n, cfg.replications)
            if cfg.concurrent_replications:
                with ThreadPoolExecutor(max_workers=cfg.replications) as pool:
                    futures = [
                        pool.submit(self.run_replication, rep, n)
                        for rep in range(cfg.replications)
                    ]
                    for future in futures:
                        emit(future.result())
            else:
                for rep in range(cfg.replications):
                    emit(self.run_replication(rep, n))
        return rows


def run_bench(
    cfg: BenchConfig,
    output: OutputFormatter | None = None,
    output_path: str | Path | None = None,
) -> list[BenchReportRow]:
    """
    Run the benchmark protocol and stream rows to CSV.

    Args:
        cfg: benchmark protocol
        output: progress formatter
        output_path: CSV destination; defaults to cfg.output_path

    Returns:
        All report rows, failed fits included
    """
    path = Path(output_path or cfg.output_path)
    runner = BenchRunner(cfg, output)
    with RowWriter(path) as writer:
        rows = runner.run(writer)
    logger.info("wrote %d rows to %s", len(rows), path)
    return rows
