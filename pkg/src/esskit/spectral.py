"""Sample autocorrelation estimation via FFT and Welch periodograms.

Both sample backends return the *biased* ACF (implicit (n-k)/n factor),
normalized to 1 at lag 0. The ESS formulas consume that convention; see
`esskit.ess` for the taper bookkeeping it implies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import get_window

from esskit.errors import DegenerateInputError, ParameterError
from esskit.series import Roughness, TimeSeries

ACF_METHODS = ("fft", "welch", "gaussian-parametric")

_NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class AcfEstimate:
    """An estimated autocorrelation sequence for lags 0..len(rho)-1.

    ``lag0_autocov`` keeps the un-normalized lag-0 autocovariance for
    the sample backends (None for the parametric form); it is a
    diagnostic used by the Parseval consistency checks.
    """

    rho: np.ndarray
    method: str
    n_source: int
    lag0_autocov: float | None = None

    def __post_init__(self):
        if self.method not in ACF_METHODS:
            raise ParameterError(f"unknown ACF method {self.method!r}")
        arr = np.asarray(self.rho, dtype=np.float64).reshape(-1)
        if arr.size < 1:
            raise ParameterError("ACF must contain at least lag 0")
        if abs(arr[0] - 1.0) > _NORMALIZATION_TOL:
            raise ParameterError(f"ACF not normalized: rho[0] = {arr[0]!r}")
        if np.max(np.abs(arr)) > 1.0 + _NORMALIZATION_TOL:
            raise ParameterError("ACF values must lie in [-1, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "rho", arr)


def _centered_values(ts: TimeSeries) -> np.ndarray:
    y = ts.values - np.mean(ts.values)
    if not np.any(y):
        raise DegenerateInputError("ACF is undefined for a constant series")
    return y


def _next_pow2(m: int) -> int:
    return 1 << (int(m - 1).bit_length())


def acf_fft(ts: TimeSeries) -> AcfEstimate:
    """Biased sample ACF via the periodogram, lags 0..n-1.

    The series is zero-padded to a power of two >= 2n-1 so the circular
    correlation of the transform equals the linear one.
    """
    n = len(ts)
    if n < 8:
        raise DegenerateInputError(f"ACF estimation requires at least 8 samples, got {n}")
    y = _centered_values(ts)
    m = _next_pow2(2 * n - 1)
    spectrum = np.fft.rfft(y, m)
    acov = np.fft.irfft(spectrum.real**2 + spectrum.imag**2, m)[:n]
    return AcfEstimate(
        rho=acov / acov[0], method="fft", n_source=n, lag0_autocov=float(acov[0] / n)
    )


def welch_segment_count(n: int, segment: int, overlap: int) -> int:
    """Number of fully-contained Welch segments for the given geometry."""
    return (n - overlap) // (segment - overlap)


def acf_welch(ts: TimeSeries, segment: int = 256, overlap: int = 128) -> AcfEstimate:
    """Sample ACF from a Welch periodogram, lags 0..segment-1.

    Hann-windowed, per-segment mean-detrended averaging. When the series
    is shorter than ``segment`` the window shrinks to the series length
    and the overlap to half of it.
    """
    n = len(ts)
    if n < 8:
        raise DegenerateInputError(f"ACF estimation requires at least 8 samples, got {n}")
    if segment < 2:
        raise ParameterError(f"segment length must be >= 2, got {segment}")
    if n < segment:
        segment = n
        overlap = segment // 2
    if not 0 <= overlap < segment:
        raise ParameterError(f"overlap must lie in [0, segment), got {overlap}")

    y = _centered_values(ts)
    window = get_window("hann", segment)
    step = segment - overlap
    count = welch_segment_count(n, segment, overlap)
    psd = np.zeros(segment // 2 + 1)
    for i in range(count):
        chunk = y[i * step : i * step + segment]
        tapered = (chunk - np.mean(chunk)) * window
        spectrum = np.fft.rfft(tapered)
        psd += spectrum.real**2 + spectrum.imag**2
    acov = np.fft.irfft(psd / count, segment)
    if acov[0] <= 0:
        raise DegenerateInputError("Welch periodogram is identically zero")
    return AcfEstimate(
        rho=acov / acov[0],
        method="welch",
        n_source=n,
        lag0_autocov=float(acov[0] / np.sum(window**2)),
    )


def acf_gaussian(rough: Roughness | float, max_lag: int) -> AcfEstimate:
    """Parametric Gaussian ACF exp(-r k^2 / 2) for lags 0..max_lag-1."""
    r = rough.value if isinstance(rough, Roughness) else float(rough)
    if r < 0 or not np.isfinite(r):
        raise ParameterError(f"roughness must be finite and non-negative, got {r}")
    if r == 0:
        raise DegenerateInputError("Gaussian ACF is degenerate at zero roughness")
    if max_lag < 1:
        raise ParameterError(f"max_lag must be >= 1, got {max_lag}")
    k = np.arange(max_lag, dtype=np.float64)
    return AcfEstimate(
        rho=np.exp(-0.5 * r * k * k), method="gaussian-parametric", n_source=max_lag
    )
