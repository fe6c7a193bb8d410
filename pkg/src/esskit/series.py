"""Time-series value type and the sample-statistic primitives.

Every estimator in the package consumes these; all functions are pure
and the `TimeSeries` payload is frozen after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from esskit import _backend
from esskit.errors import DegenerateInputError, ParameterError

ROUGHNESS_SOURCES = ("derivative-variance", "prescribed")


@dataclass(frozen=True)
class TimeSeries:
    """A finite real-valued sampled signal.

    ``dt`` is the sampling interval in time units per sample; statistics
    that depend on it (differences, roughness) are documented per
    function. ``values`` is stored as a read-only float64 array.
    """

    values: np.ndarray
    dt: float = 1.0
    label: str | None = None

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size < 1:
            raise DegenerateInputError("time series must contain at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("time series values must all be finite")
        if not (self.dt > 0):
            raise ParameterError(f"sampling interval must be positive, got {self.dt}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Roughness:
    """Second spectral moment of a unit-peak autocorrelation.

    Units are (1/sample)^2 when dt = 1, (1/time)^2 otherwise.
    """

    value: float
    source: str = "derivative-variance"

    def __post_init__(self):
        if self.source not in ROUGHNESS_SOURCES:
            raise ParameterError(f"unknown roughness source {self.source!r}")
        if not np.isfinite(self.value) or self.value < 0:
            raise ParameterError(f"roughness must be finite and non-negative, got {self.value}")
        object.__setattr__(self, "value", float(self.value))


def _require_length(ts: TimeSeries, minimum: int, what: str) -> None:
    if len(ts) < minimum:
        raise DegenerateInputError(f"{what} requires at least {minimum} samples, got {len(ts)}")


def variance(ts: TimeSeries) -> float:
    """Unbiased sample variance of the series values."""
    _require_length(ts, 2, "variance")
    return _backend.variance(ts.values)


def diff(ts: TimeSeries) -> TimeSeries:
    """Forward differences scaled by 1/dt; output is one sample shorter."""
    _require_length(ts, 2, "differencing")
    return TimeSeries(np.diff(ts.values) / ts.dt, dt=ts.dt, label=ts.label)


def roughness(ts: TimeSeries) -> Roughness:
    """Estimate the ACF curvature at lag 0 from the derivative variance.

    Returns var(diff(ts)) / var(ts). Dividing by the series variance
    makes this the second spectral moment of the *autocorrelation* (a
    unit-peak function), so the estimate is invariant under affine
    transforms of the values.
    """
    _require_length(ts, 8, "roughness estimation")
    var_x, var_d = _backend.series_moments(ts.values)
    if var_x == 0.0:
        raise DegenerateInputError("roughness is undefined for a constant series")
    return Roughness(var_d / (ts.dt * ts.dt * var_x), source="derivative-variance")


def zero_crossings(ts: TimeSeries) -> int:
    """Count strict sign changes of the mean-centered series.

    A zero sample inherits the previous nonzero sign (leading zeros are
    skipped), matching the strict-crossing convention: tangential
    touches of the mean are not counted twice.
    """
    _require_length(ts, 2, "zero-crossing counting")
    count = _backend.zero_crossings(ts.values)
    if count < 0:
        raise DegenerateInputError("all centered values are zero; no crossings defined")
    return count


def rank_transform(ts: TimeSeries) -> TimeSeries:
    """Replace values by their 1-based ranks, ties averaged; dt preserved."""
    _require_length(ts, 2, "rank transform")
    return TimeSeries(stats.rankdata(ts.values, method="average"), dt=ts.dt, label=ts.label)


def standardize(ts: TimeSeries) -> TimeSeries:
    """Shift and scale to sample mean 0 and unbiased sample variance 1."""
    _require_length(ts, 2, "standardization")
    var_x = _backend.variance(ts.values)
    if var_x == 0.0:
        raise DegenerateInputError("cannot standardize a constant series")
    centered = ts.values - np.mean(ts.values)
    return TimeSeries(centered / np.sqrt(var_x), dt=ts.dt, label=ts.label)
