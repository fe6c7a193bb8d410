"""Monte-Carlo validation experiments.

Each experiment draws replicated sample paths from the Gaussian-ACF
generator at configured roughness levels, runs the estimators under
test, and emits long-format CSV tables (plus optional SVG summaries).
Replicates are seeded individually from the master seed, so serial and
parallel runs produce identical output.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from esskit import gpga
from esskit.corrstats import corr_test_pipeline
from esskit.errors import EstimationError, ParameterError
from esskit.ess import ess_laplace, ess_quenouille
from esskit.harness.csvio import write_csv
from esskit.harness.svg import emit_svg_lineplot
from esskit.series import roughness
from esskit.spectral import acf_fft, acf_welch

EXPERIMENTS = ("acf-fit", "ess-sweep", "pp-calibration", "bench")

#: Estimators compared by the sweep and calibration experiments.
SWEEP_METHODS = ("laplace-derivative", "quenouille-fft", "quenouille-welch")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters shared by all validation experiments."""

    experiment: str
    replicates: int
    lengths: tuple[int, ...] = (500, 1000, 2000)
    roughness_grid: tuple[float, ...] = (1e-2, 1e-4)
    master_seed: int = 0
    output_dir: Path = field(default_factory=lambda: Path("esskit-out"))
    emit_svg: bool = False
    workers: int = 1
    alpha: float = 0.05
    loops: int = 100
    runs: int = 7

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        if self.replicates < 1:
            raise ParameterError("replicates must be >= 1")
        if not self.lengths or any(n < 8 for n in self.lengths):
            raise ParameterError("lengths must be non-empty with every entry >= 8")
        if not self.roughness_grid or any(r <= 0 for r in self.roughness_grid):
            raise ParameterError("roughness grid must be non-empty and positive")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        if not 0 < self.alpha < 1:
            raise ParameterError("alpha must lie in (0, 1)")
        if self.loops < 1 or self.runs < 2:
            raise ParameterError("bench needs loops >= 1 and runs >= 2")
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        object.__setattr__(self, "lengths", tuple(int(n) for n in self.lengths))
        object.__setattr__(self, "roughness_grid", tuple(float(r) for r in self.roughness_grid))


def _map_replicates(fn: Callable, tasks: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(task) for task in tasks]
    chunk = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def _band(values: list[float]) -> tuple[float, float, float, int]:
    """Mean and 2.5/97.5 percentiles, NaN-failures counted separately."""
    arr = np.asarray(values, dtype=np.float64)
    ok = arr[np.isfinite(arr)]
    failures = int(arr.size - ok.size)
    if ok.size == 0:
        return math.nan, math.nan, math.nan, failures
    lo, hi = np.percentile(ok, [2.5, 97.5])
    return float(np.mean(ok)), float(lo), float(hi), failures


def ks_statistic(p_values: Sequence[float]) -> float:
    """One-sample Kolmogorov-Smirnov distance to the uniform distribution."""
    p = np.sort(np.asarray(p_values, dtype=np.float64))
    n = p.size
    if n == 0:
        raise ParameterError("KS statistic requires at least one value")
    grid = np.arange(1, n + 1) / n
    return float(max(np.max(grid - p), np.max(p - (grid - 1 / n))))


# --- squared-ACF fit quality ---------------------------------------------


def _acf_fit_replicate(task) -> tuple:
    rough, length, n_lags, master_seed, cell, idx = task
    path = gpga.sample(gpga.GpgaSpec(rough, length, gpga.derive_seed(master_seed, cell, idx)))
    sample_sq = acf_fft(path).rho[:n_lags] ** 2
    fitted = roughness(path).value
    k = np.arange(n_lags)
    fit_sq = np.exp(-fitted * k * k)
    return idx, sample_sq, fit_sq


def run_acf_fit(config: ExperimentConfig) -> dict[str, Path]:
    """Per-replicate squared sample ACF vs Gaussian fits vs theory.

    Emits the long-format table needed to redraw the fit-quality figure;
    theory rows carry replicate = -1. Lags run to about 5 correlation
    lengths (capped by the series length).
    """
    n = config.lengths[0]
    rows: list[tuple] = []
    summary: list[tuple] = []
    for cell, rough in enumerate(config.roughness_grid):
        n_lags = min(n - 1, int(math.ceil(5.0 / math.sqrt(rough)))) + 1
        k = np.arange(n_lags)
        theory_sq = np.exp(-rough * k * k)
        tasks = [
            (rough, n, n_lags, config.master_seed, cell, idx)
            for idx in range(config.replicates)
        ]
        results = _map_replicates(_acf_fit_replicate, tasks, config.workers)
        sums = {"sample": np.zeros(n_lags), "gaussian-fit": np.zeros(n_lags)}
        for idx, sample_sq, fit_sq in results:
            for lag in range(n_lags):
                rows.append((rough, lag, idx, "sample", float(sample_sq[lag])))
                rows.append((rough, lag, idx, "gaussian-fit", float(fit_sq[lag])))
            sums["sample"] += sample_sq
            sums["gaussian-fit"] += fit_sq
        for lag in range(n_lags):
            rows.append((rough, lag, -1, "theory", float(theory_sq[lag])))
        for method, total in sums.items():
            for lag in range(n_lags):
                summary.append((rough, lag, method, float(total[lag] / config.replicates)))
        for lag in range(n_lags):
            summary.append((rough, lag, "theory", float(theory_sq[lag])))

    rows.sort(key=lambda row: (row[0], row[1], row[2], row[3]))
    summary.sort(key=lambda row: (row[0], row[1], row[2]))
    out = config.output_dir
    paths = {
        "acf_fit": out / "acf_fit.csv",
        "acf_fit_summary": out / "acf_fit_summary.csv",
    }
    write_csv(paths["acf_fit"], ["roughness", "lag", "replicate", "method", "value"], rows)
    write_csv(paths["acf_fit_summary"], ["roughness", "lag", "method", "mean_value"], summary)
    if config.emit_svg:
        for rough in config.roughness_grid:
            pivot = _pivot_summary(summary, rough)
            svg = out / f"acf_fit_r{rough:g}.svg"
            emit_svg_lineplot(
                svg,
                ["lag", "sample", "gaussian-fit", "theory"],
                pivot,
                "lag",
                ["sample", "gaussian-fit", "theory"],
                title=f"Squared ACF, roughness {rough:g}",
                y_label="squared ACF",
            )
            paths[svg.stem] = svg
    return paths


def _pivot_summary(summary: list[tuple], rough: float) -> list[list[float]]:
    by_lag: dict[int, dict[str, float]] = {}
    for r, lag, method, value in summary:
        if r == rough:
            by_lag.setdefault(lag, {})[method] = value
    return [
        [lag, vals["sample"], vals["gaussian-fit"], vals["theory"]]
        for lag, vals in sorted(by_lag.items())
    ]


# --- ESS-factor sweep ------------------------------------------------------


def _sweep_replicate(task) -> tuple:
    rough, length, master_seed, cell, idx = task
    path = gpga.sample(gpga.GpgaSpec(rough, length, gpga.derive_seed(master_seed, cell, idx)))
    out = {"roughness": roughness(path).value}
    out["laplace-derivative"] = ess_laplace(path, path).nu / length
    for method, acf_fn in (("quenouille-fft", acf_fft), ("quenouille-welch", acf_welch)):
        try:
            acf = acf_fn(path)
            out[method] = ess_quenouille(acf, acf, length).nu / length
        except EstimationError:
            out[method] = math.nan
    return out


def run_ess_sweep(config: ExperimentConfig) -> dict[str, Path]:
    """ESS factor (nu/n) by estimator across a roughness/length grid.

    Emits per-cell mean and 2.5/97.5 percentile bands for the three
    estimators plus the estimated roughness itself.
    """
    rows: list[tuple] = []
    cell = 0
    for rough in config.roughness_grid:
        for length in config.lengths:
            tasks = [
                (rough, length, config.master_seed, cell, idx)
                for idx in range(config.replicates)
            ]
            results = _map_replicates(_sweep_replicate, tasks, config.workers)
            theory = gpga.theoretical_ess_factor(rough)
            for method in ("roughness",) + SWEEP_METHODS:
                mean, lo, hi, failures = _band([res[method] for res in results])
                target = rough if method == "roughness" else theory
                rows.append((rough, length, method, mean, lo, hi, target, failures))
            cell += 1

    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    out = config.output_dir
    paths = {"ess_sweep": out / "ess_sweep.csv"}
    write_csv(
        paths["ess_sweep"],
        ["roughness", "length", "method", "mean", "p2_5", "p97_5", "theory", "failures"],
        rows,
    )
    if config.emit_svg and len(config.roughness_grid) > 1:
        length = config.lengths[0]
        by_rough: dict[float, dict[str, float]] = {}
        for rough, n, method, mean, *_ in rows:
            if n == length and method != "roughness":
                by_rough.setdefault(rough, {})[method] = mean
        pivot = [
            [rough, vals[SWEEP_METHODS[0]], vals[SWEEP_METHODS[1]], vals[SWEEP_METHODS[2]],
             gpga.theoretical_ess_factor(rough)]
            for rough, vals in sorted(by_rough.items())
        ]
        svg = out / "ess_sweep.svg"
        emit_svg_lineplot(
            svg,
            ["roughness", *SWEEP_METHODS, "theory"],
            pivot,
            "roughness",
            [*SWEEP_METHODS, "theory"],
            log_x=True,
            log_y=True,
            title=f"ESS factor vs roughness (n = {length})",
            y_label="ESS factor",
        )
        paths["ess_sweep_svg"] = svg
    return paths


# --- null-hypothesis calibration -------------------------------------------


def _pp_replicate(task) -> dict[str, float]:
    rough, length, alpha, master_seed, cell, idx = task
    spec_x = gpga.GpgaSpec(rough, length, gpga.derive_seed(master_seed, cell, idx, 0))
    spec_y = gpga.GpgaSpec(rough, length, gpga.derive_seed(master_seed, cell, idx, 1))
    x, y = gpga.sample(spec_x), gpga.sample(spec_y)
    out: dict[str, float] = {}
    for method, short in (
        ("laplace-derivative", "derivative"),
        ("quenouille-fft", "fft"),
        ("quenouille-welch", "welch"),
    ):
        try:
            out[method] = corr_test_pipeline(x, y, "pearson", short, alpha).p_two_sided
        except EstimationError:
            out[method] = math.nan
    return out


def run_pp_calibration(config: ExperimentConfig) -> dict[str, Path]:
    """Null-distribution calibration on independent pairs.

    For every estimator: sorted estimated p-values against the empirical
    plotting positions (i - 0.5) / R, plus the KS distance to uniformity
    and the rejection rate at the configured alpha.
    """
    length = config.lengths[0]
    curve_rows: list[tuple] = []
    summary_rows: list[tuple] = []
    for cell, rough in enumerate(config.roughness_grid):
        tasks = [
            (rough, length, config.alpha, config.master_seed, cell, idx)
            for idx in range(config.replicates)
        ]
        results = _map_replicates(_pp_replicate, tasks, config.workers)
        for method in SWEEP_METHODS:
            p_all = np.asarray([res[method] for res in results])
            p = np.sort(p_all[np.isfinite(p_all)])
            failures = int(p_all.size - p.size)
            empirical = (np.arange(1, p.size + 1) - 0.5) / p.size
            for emp, est in zip(empirical, p):
                curve_rows.append((rough, method, float(emp), float(est)))
            summary_rows.append(
                (
                    rough,
                    method,
                    ks_statistic(p),
                    float(np.mean(p < config.alpha)),
                    p.size,
                    failures,
                )
            )

    curve_rows.sort(key=lambda row: (row[0], row[1], row[2]))
    summary_rows.sort(key=lambda row: (row[0], row[1]))
    out = config.output_dir
    paths = {"pp_curves": out / "pp_curves.csv", "pp_summary": out / "pp_summary.csv"}
    write_csv(paths["pp_curves"], ["roughness", "method", "empirical", "estimated"], curve_rows)
    write_csv(
        paths["pp_summary"],
        ["roughness", "method", "ks", "rejection_rate", "replicates", "failures"],
        summary_rows,
    )
    if config.emit_svg:
        for rough in config.roughness_grid:
            by_emp: dict[float, dict[str, float]] = {}
            for r, method, emp, est in curve_rows:
                if r == rough:
                    by_emp.setdefault(emp, {})[method] = est
            pivot = [
                [emp, *[vals.get(m, math.nan) for m in SWEEP_METHODS], emp]
                for emp, vals in sorted(by_emp.items())
                if len(vals) == len(SWEEP_METHODS)
            ]
            if not pivot:
                continue
            svg = out / f"pp_r{rough:g}.svg"
            emit_svg_lineplot(
                svg,
                ["empirical", *SWEEP_METHODS, "diagonal"],
                pivot,
                "empirical",
                [*SWEEP_METHODS, "diagonal"],
                title=f"p-p calibration, roughness {rough:g}",
                y_label="estimated probability",
            )
            paths[svg.stem] = svg
    return paths
