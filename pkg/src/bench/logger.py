"""Run log for benchmark sweeps."""

import logging
from datetime import datetime
from pathlib import Path


class BenchLogger:
    """Per-sweep log file; every line can also be echoed to the console."""

    def __init__(self, log_dir: str, run_name: str):
        """
        Open a fresh timestamped log file.

        Args:
            log_dir: Directory for log files, created if missing
            run_name: File prefix, e.g. bench_hartman6
        """
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_file = self.log_dir / f"{run_name}_{timestamp}.log"

        # own logger per file; nothing reaches the root handlers
        self.logger = logging.getLogger(f"{run_name}_{timestamp}")
        self.logger.setLevel(logging.INFO)
        self.logger.propagate = False
        self.logger.handlers.clear()

        file_handler = logging.FileHandler(self.log_file, mode="w")
        file_handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
        self.logger.addHandler(file_handler)

    def log(self, message: str, also_print: bool = False, level: int = logging.INFO) -> None:
        """
        Write one line to the run log.

        Args:
            message: Message to log
            also_print: If True, also print to console
            level: logging level of the file record
        """
        self.logger.log(level, message)
        if also_print:
            print(message)

    def get_log_path(self) -> str:
        """Get the path to the log file."""
        return str(self.log_file)

    def close(self) -> None:
        """Flush and detach the file handler; later log calls are dropped."""
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)
