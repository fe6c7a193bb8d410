"""Command-line interface.

Subcommands: ``gen`` (sample the Gaussian-ACF generator to CSV), ``ess``
(effective sample size of one series or a pair), ``corr-test`` (full
significance test), ``validate`` (Monte-Carlo validation experiments),
and ``bench`` (timing benchmark). Results go to stdout, diagnostics to
stderr; exit codes: 0 success, 2 input error, 3 estimation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from esskit import __version__, _backend
from esskit.corrstats import corr_test_pipeline
from esskit.errors import EstimationError, InputError
from esskit.ess import PAIR_ESS_DISPATCH, estimate_pair_ess
from esskit.gpga import GpgaSpec, sample
from esskit.harness.bench import run_bench
from esskit.harness.csvio import format_value, read_series_csv, write_series_csv
from esskit.harness.experiments import (
    ExperimentConfig,
    run_acf_fit,
    run_ess_sweep,
    run_pp_calibration,
)
from esskit.series import TimeSeries

_EXPERIMENT_DEFAULTS = {
    "acf-fit": dict(replicates=2000, lengths=(1000,), roughness=(1e-1, 1e-2, 1e-4)),
    "ess-sweep": dict(
        replicates=1000,
        lengths=(500, 1000, 2000),
        roughness=(1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0),
    ),
    "pp-calibration": dict(replicates=5000, lengths=(2000,), roughness=(1e-2, 1e-4)),
    "bench": dict(replicates=1, lengths=(100, 1000, 10_000, 100_000, 1_000_000),
                  roughness=(1e-3,)),
}

_EXPERIMENT_RUNNERS = {
    "acf-fit": run_acf_fit,
    "ess-sweep": run_ess_sweep,
    "pp-calibration": run_pp_calibration,
}


def _column(value: str) -> int | str:
    try:
        return int(value)
    except ValueError:
        return value


def _add_series_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--column", type=_column, default=None,
                        help="CSV column to read, by name or 0-based index")
    parser.add_argument("--dt", type=float, default=1.0, help="sampling interval")
    parser.add_argument("--detrend", choices=("none", "linear"), default="none",
                        help="input conditioning before estimation")


def _detrend_linear(ts: TimeSeries) -> TimeSeries:
    t = np.arange(len(ts), dtype=np.float64)
    slope, intercept = np.polyfit(t, ts.values, 1)
    return TimeSeries(ts.values - (slope * t + intercept), dt=ts.dt, label=ts.label)


def _load_series(path: str, args: argparse.Namespace) -> TimeSeries:
    ts = read_series_csv(path, column=args.column, dt=args.dt)
    if args.detrend == "linear":
        ts = _detrend_linear(ts)
    return ts


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _finite_or_none(value: float) -> float | None:
    return value if np.isfinite(value) else None


def _cmd_gen(args: argparse.Namespace) -> int:
    ts = sample(GpgaSpec(roughness=args.roughness, length=args.length, seed=args.seed))
    if args.dt != 1.0:
        ts = TimeSeries(ts.values, dt=args.dt)
    if args.out:
        write_series_csv(args.out, ts)
        print(f"wrote {args.length} samples to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write("value\n")
        for v in ts.values.tolist():
            sys.stdout.write(format_value(v) + "\n")
    return 0


def _cmd_ess(args: argparse.Namespace) -> int:
    x = _load_series(args.series_x, args)
    y = _load_series(args.series_y, args) if args.series_y else x
    estimate = estimate_pair_ess(x, y, args.method)
    payload = {
        "ess": estimate.nu,
        "ess_raw": estimate.nu_raw,
        "ess_method": estimate.method,
        "clamped": estimate.clamped,
        "n": estimate.n,
    }
    if args.json:
        _emit_json(payload)
    else:
        for key, value in payload.items():
            print(f"{key:12s} {value}")
    return 0


def _cmd_corr_test(args: argparse.Namespace) -> int:
    x = _load_series(args.series_x, args)
    y = _load_series(args.series_y, args)
    result = corr_test_pipeline(
        x, y, coefficient_kind=args.coef, ess_method=args.method, alpha=args.alpha
    )
    payload = {
        "r": result.r,
        "coefficient": result.coefficient_kind,
        "ess": result.nu.nu,
        "ess_raw": result.nu.nu_raw,
        "ess_method": result.nu.method,
        "clamped": result.nu.clamped,
        "z": _finite_or_none(result.z),
        "p_two_sided": result.p_two_sided,
        "quantile": result.q975,
        "alpha": result.alpha,
        "n": result.nu.n,
    }
    if args.json:
        _emit_json(payload)
    else:
        for key, value in payload.items():
            print(f"{key:12s} {value}")
        verdict = "significant" if result.p_two_sided < args.alpha else "not significant"
        print(f"{'verdict':12s} {verdict} at alpha={args.alpha:g}")
    return 0


def _experiment_config(args: argparse.Namespace, experiment: str) -> ExperimentConfig:
    defaults = _EXPERIMENT_DEFAULTS.get(experiment, {})
    replicates = args.replicates if args.replicates is not None else defaults.get("replicates", 100)
    lengths = args.lengths if args.lengths is not None else defaults.get("lengths", (1000,))
    rough = args.roughness if args.roughness is not None else defaults.get("roughness", (1e-3,))
    return ExperimentConfig(
        experiment=experiment,
        replicates=replicates,
        lengths=tuple(lengths),
        roughness_grid=tuple(rough),
        master_seed=args.seed,
        output_dir=Path(args.out),
        emit_svg=args.svg,
        workers=args.workers,
        alpha=args.alpha,
        loops=getattr(args, "loops", 100),
        runs=getattr(args, "runs", 7),
    )


def _cmd_validate(args: argparse.Namespace) -> int:
    config = _experiment_config(args, args.experiment)
    paths = _EXPERIMENT_RUNNERS[args.experiment](config)
    for name in sorted(paths):
        print(f"{name}: {paths[name]}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    args.replicates = 1
    config = _experiment_config(args, "bench")
    results, paths = run_bench(config)
    base = {r.n: r.mean_seconds for r in results if r.method == "derivative"}
    print(f"kernel backend: {_backend.backend_name()}")
    print(f"{'n':>10} {'method':<18} {'mean (s)':>12} {'std (s)':>12} {'speedup':>8}")
    for res in sorted(results, key=lambda r: (r.n, r.method)):
        print(
            f"{res.n:>10} {res.method:<18} {res.mean_seconds:>12.3e} "
            f"{res.std_seconds:>12.3e} {res.mean_seconds / base[res.n]:>8.2f}"
        )
    for name in sorted(paths):
        print(f"{name}: {paths[name]}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esskit",
        description="Effective sample size and correlation significance "
        "for autocorrelated time series",
    )
    parser.add_argument("--version", action="version", version=f"esskit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample the Gaussian-ACF generator to CSV")
    gen.add_argument("--roughness", type=float, required=True)
    gen.add_argument("--length", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dt", type=float, default=1.0)
    gen.add_argument("--out", default=None, help="output CSV path (default stdout)")
    gen.set_defaults(func=_cmd_gen)

    ess = sub.add_parser("ess", help="effective sample size of one series or a pair")
    ess.add_argument("series_x", help="CSV file with the (first) series")
    ess.add_argument("series_y", nargs="?", default=None, help="optional second series")
    ess.add_argument("--method", choices=PAIR_ESS_DISPATCH, default="derivative")
    ess.add_argument("--json", action="store_true")
    _add_series_flags(ess)
    ess.set_defaults(func=_cmd_ess)

    corr = sub.add_parser("corr-test", help="ESS-corrected correlation significance test")
    corr.add_argument("series_x")
    corr.add_argument("series_y")
    corr.add_argument("--coef", choices=("pearson", "spearman"), default="pearson")
    corr.add_argument("--method", choices=PAIR_ESS_DISPATCH, default="derivative")
    corr.add_argument("--alpha", type=float, default=0.05)
    corr.add_argument("--json", action="store_true")
    _add_series_flags(corr)
    corr.set_defaults(func=_cmd_corr_test)

    validate = sub.add_parser("validate", help="run a Monte-Carlo validation experiment")
    validate.add_argument("experiment", choices=tuple(_EXPERIMENT_RUNNERS))
    _add_experiment_flags(validate)
    validate.set_defaults(func=_cmd_validate)

    bench = sub.add_parser("bench", help="time the estimation paths")
    _add_experiment_flags(bench)
    bench.add_argument("--loops", type=int, default=100, help="iterations per timing sample")
    bench.add_argument("--runs", type=int, default=7, help="timing samples per cell")
    bench.set_defaults(func=_cmd_bench)

    return parser


def _add_experiment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--replicates", type=int, default=None)
    parser.add_argument("--lengths", type=int, nargs="+", default=None)
    parser.add_argument("--roughness", type=float, nargs="+", default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--out", default="esskit-out", help="output directory")
    parser.add_argument("--svg", action="store_true", help="also emit SVG summaries")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel replicate workers (identical output to serial)")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"esskit: input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"esskit: i/o error: {exc}", file=sys.stderr)
        return 2
    except EstimationError as exc:
        print(f"esskit: estimation failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
