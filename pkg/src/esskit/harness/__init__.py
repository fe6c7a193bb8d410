"""CLI, file I/O, validation experiments, and the timing benchmark."""

from esskit.harness.bench import BenchResult, run_bench
from esskit.harness.csvio import read_series_csv, write_csv, write_series_csv
from esskit.harness.experiments import (
    ExperimentConfig,
    run_acf_fit,
    run_ess_sweep,
    run_pp_calibration,
)
from esskit.harness.svg import emit_svg_lineplot

__all__ = [
    "BenchResult",
    "ExperimentConfig",
    "emit_svg_lineplot",
    "read_series_csv",
    "run_acf_fit",
    "run_bench",
    "run_ess_sweep",
    "run_pp_calibration",
    "write_csv",
    "write_series_csv",
]
