"""CLI interface for the GP emulator benchmark."""

import sys
from pathlib import Path

import fire
import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from src.backend.factory import create_backend
from src.bench.logger import BenchLogger
from src.bench.metrics import speedup_report, summarize
from src.bench.output import OutputFormatter
from src.bench.report import read_rows, write_models
from src.bench.runner import run_bench
from src.config.load import BenchConfig
from src.core.errors import ConfigError
from src.core.io import save_dataset_csv
from src.core.types import FitConfig, new_dataset
from src.experiment.design import DesignSpec, maximin_lhd
from src.experiment.functions import get_simulator
from src.likelihood.fit import likelihood_surface

# default surface grids: full view and the zoom near the origin
SURFACE_RANGE = (0.05, 12.0)
SURFACE_ZOOM_RANGE = (1e-3, 1.0)


def _fail(message: str) -> None:
    print(f"ERROR: {message}", file=sys.stderr)
    sys.exit(2)


def _sibling(csv_path: str, suffix: str) -> Path:
    path = Path(csv_path)
    return path.with_name(f"{path.stem}_{suffix}.csv")


class BenchCLI:
    """Command-line interface for fitting and benchmarking GP emulators."""

    def __init__(self):
        load_dotenv()
        self.output = OutputFormatter()

    def run(self, config: str = "configs/goldstein_price.yaml", output: str | None = None) -> None:
        """
        Run a benchmark sweep and print its summary.

        Args:
            config: Path to YAML benchmark configuration
            output: Optional CSV path overriding the config's output_path
        """
        try:
            cfg = BenchConfig.load(config)
        except ConfigError as e:
            _fail(str(e))

        logger = BenchLogger(cfg.log_dir, f"bench_{cfg.function}")
        output_fmt = OutputFormatter(logger)
        output_fmt.print_header(
            f"GP EMULATOR BENCHMARK - {cfg.function}",
            f"sizes={cfg.sizes} replications={cfg.replications} "
            f"backends={cfg.backends} precision={cfg.precision} seed={cfg.seed}",
        )
        try:
            rows = run_bench(cfg, output_fmt, output)
            output_fmt.print_summary(summarize(rows))
            if len(cfg.backends) > 1:
                output_fmt.print_speedup(speedup_report(rows))
        finally:
            logger.close()
        print(f"\nRows saved to: {output or cfg.output_path}")
        print(f"Run log saved to: {logger.get_log_path()}")

    def summarize(self, csv_path: str) -> None:
        """
        Aggregate a results CSV into per-cell means.

        Writes <csv>_summary.csv next to the input.

        Args:
            csv_path: CSV written by `run`
        """
        if not Path(csv_path).is_file():
            _fail(f"results file '{csv_path}' not found")
        summary = summarize(read_rows(csv_path))
        self.output.print_summary(summary)
        print(f"Summary saved to: {write_models(_sibling(csv_path, 'summary'), summary)}")

    def speedup(self, csv_path: str, baseline: str | None = None) -> None:
        """
        Backend wall-time ratios per cell.

        Writes <csv>_speedup.csv next to the input.

        Args:
            csv_path: CSV written by `run`
            baseline: numerator backend (default "reference" when present)
        """
        if not Path(csv_path).is_file():
            _fail(f"results file '{csv_path}' not found")
        report = speedup_report(read_rows(csv_path), baseline)
        self.output.print_speedup(report)
        print(f"Speedup table saved to: {write_models(_sibling(csv_path, 'speedup'), report)}")

    def surface(
        self,
        output: str = "results/surface.csv",
        function: str = "goldstein_price_log",
        n: int = 30,
        points: int = 25,
        zoom: bool = False,
        seed: int = 0,
        backend: str = "parallel",
        precision: str = "double",
    ) -> None:
        """
        Evaluate -2 log L on a theta grid for one maximin design.

        Args:
            output: CSV destination
            function: Simulator name
            n: Design size
            points: Grid points per axis
            zoom: Use the grid near the origin instead of the full range
            seed: Design seed
            backend: Backend identifier
            precision: "single" or "double"
        """
        try:
            simulator, d = get_simulator(function)
            inputs = maximin_lhd(DesignSpec(n=n, d=d, seed=seed))
            cfg = FitConfig(precision=precision, backend=backend)
        except (ValueError, ValidationError) as e:
            _fail(str(e))
        dataset = new_dataset(inputs, simulator(inputs))

        lower, upper = SURFACE_ZOOM_RANGE if zoom else SURFACE_RANGE
        axis = np.linspace(lower, upper, points)
        with create_backend(backend, precision, None) as engine:
            evals = likelihood_surface(dataset, cfg, engine, [axis] * d)

        table = np.array(
            [
                [*e.theta, e.neg2_log_lik, e.mu_hat, e.sigma2_hat, e.jitter_used]
                for e in evals
            ]
        )
        header = [f"theta{k}" for k in range(1, d + 1)]
        header += ["neg2_log_lik", "mu_hat", "sigma2_hat", "jitter_used"]
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, table, delimiter=",", fmt="%.17g", header=",".join(header), comments="")
        print(f"Surface ({len(evals)} points) saved to: {path}")

    def design(
        self,
        output: str,
        function: str = "goldstein_price_log",
        n: int = 32,
        seed: int = 0,
        exchange_budget: int = 10000,
    ) -> None:
        """
        Write a maximin LHD evaluated on a simulator as a dataset CSV.

        Args:
            output: CSV destination
            function: Simulator name
            n: Design size
            seed: Design seed
            exchange_budget: Point-exchange swaps to propose
        """
        try:
            simulator, d = get_simulator(function)
            spec = DesignSpec(n=n, d=d, seed=seed, exchange_budget=exchange_budget)
        except (ValueError, ValidationError) as e:
            _fail(str(e))
        inputs = maximin_lhd(spec)
        path = save_dataset_csv(new_dataset(inputs, simulator(inputs)), output)
        print(f"Design ({n} x {d}) saved to: {path}")


def main() -> None:
    """Main entry point for CLI."""
    fire.Fire(BenchCLI)


if __name__ == "__main__":
    main()
