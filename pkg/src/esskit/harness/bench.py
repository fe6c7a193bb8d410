"""Timing benchmark for the ESS estimation paths.

Times estimation only: paths are pre-generated outside the timed
region, and each (length, method) cell reports mean and standard
deviation across ``runs`` repetitions of ``loops`` iterations on a
monotonic clock. When the compiled kernel core is present, two extra
rows time the derivative path through each kernel backend explicitly so
the build's speedup over the pure numpy kernels is visible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from esskit import _backend, _kernels_py, gpga
from esskit.errors import ParameterError, ResourceLimitError
from esskit.ess import _laplace_pair_nu, ess_laplace, ess_quenouille
from esskit.harness.csvio import write_csv
from esskit.harness.svg import emit_svg_lineplot
from esskit.series import TimeSeries
from esskit.spectral import acf_fft, acf_welch

#: Hard cap; two float64 paths plus FFT workspace beyond this exhaust
#: desk-scale memory.
MAX_BENCH_LENGTH = 50_000_000


@dataclass(frozen=True)
class BenchResult:
    """Timing of one estimator at one series length."""

    n: int
    method: str
    mean_seconds: float
    std_seconds: float
    loops: int
    runs: int

    def __post_init__(self):
        if self.mean_seconds <= 0:
            raise ParameterError("mean time must be positive")
        if self.loops < 1 or self.runs < 2:
            raise ParameterError("bench needs loops >= 1 and runs >= 2")


def _time_callable(fn: Callable[[], object], loops: int, runs: int) -> tuple[float, float]:
    samples = []
    for _ in range(runs):
        start = time.perf_counter()
        for _ in range(loops):
            fn()
        samples.append((time.perf_counter() - start) / loops)
    mean = sum(samples) / len(samples)
    var = sum((s - mean) ** 2 for s in samples) / (len(samples) - 1)
    return mean, math.sqrt(var)


def _method_callables(x: TimeSeries, y: TimeSeries) -> dict[str, Callable[[], object]]:
    n = len(x)
    methods: dict[str, Callable[[], object]] = {
        "derivative": lambda: ess_laplace(x, y),
        "fft": lambda: ess_quenouille(acf_fft(x), acf_fft(y), n),
        "welch": lambda: ess_quenouille(acf_welch(x), acf_welch(y), n),
        "derivative-numpy": lambda: _laplace_pair_nu(x, y, moments=_kernels_py.series_moments),
    }
    if _backend.BACKEND == "cython":
        from esskit import _kernels

        methods["derivative-cython"] = lambda: _laplace_pair_nu(
            x, y, moments=_kernels.series_moments
        )
    return methods


def run_bench(config) -> tuple[list[BenchResult], dict[str, Path]]:
    """Benchmark every estimation path over the configured lengths.

    Writes a CSV with one row per (length, method) including the
    speedup of each method relative to the derivative path.
    """
    rough = config.roughness_grid[0]
    results: list[BenchResult] = []
    for cell, n in enumerate(config.lengths):
        if n > MAX_BENCH_LENGTH:
            raise ResourceLimitError(f"bench length {n} exceeds the cap of {MAX_BENCH_LENGTH}")
        x = gpga.sample(gpga.GpgaSpec(rough, n, gpga.derive_seed(config.master_seed, cell, 0)))
        y = gpga.sample(gpga.GpgaSpec(rough, n, gpga.derive_seed(config.master_seed, cell, 1)))
        for method, fn in _method_callables(x, y).items():
            mean, std = _time_callable(fn, config.loops, config.runs)
            results.append(
                BenchResult(
                    n=n,
                    method=method,
                    mean_seconds=mean,
                    std_seconds=std,
                    loops=config.loops,
                    runs=config.runs,
                )
            )

    base = {
        res.n: res.mean_seconds for res in results if res.method == "derivative"
    }
    rows = [
        (
            res.n,
            res.method,
            res.mean_seconds,
            res.std_seconds,
            res.loops,
            res.runs,
            res.mean_seconds / base[res.n],
        )
        for res in sorted(results, key=lambda r: (r.n, r.method))
    ]
    out = Path(config.output_dir)
    paths = {"bench": out / "bench.csv"}
    write_csv(
        paths["bench"],
        ["n", "method", "mean_seconds", "std_seconds", "loops", "runs", "speedup_vs_derivative"],
        rows,
    )
    if config.emit_svg and len(config.lengths) > 1:
        methods = sorted({res.method for res in results})
        by_n: dict[int, dict[str, float]] = {}
        for res in results:
            by_n.setdefault(res.n, {})[res.method] = res.mean_seconds
        pivot = [[n, *[vals[m] for m in methods]] for n, vals in sorted(by_n.items())]
        svg = out / "bench.svg"
        emit_svg_lineplot(
            svg,
            ["n", *methods],
            pivot,
            "n",
            methods,
            log_x=True,
            log_y=True,
            title="ESS estimation time vs series length",
            y_label="seconds",
        )
        paths["bench_svg"] = svg
    return results, paths
