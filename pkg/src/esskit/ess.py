"""Effective sample size estimators.

All pair estimators reduce to the same closed form: the ESS of two
smooth processes is n * sqrt((r_x + r_y) / (2 pi)) where r is each
process's ACF curvature at lag 0 (its roughness). The estimators differ
in where the roughness, or the full ACF, comes from:

- `ess_laplace`: roughness from derivative variances (the fast path);
- `ess_quenouille`: finite sum over lagged ACF products, the classical
  route, fed by any of the `esskit.spectral` backends;
- `ess_asymptotic_integral`: numeric quadrature of the ACF-product
  integral, used as the independent oracle for the closed form;
- `ess_rice`: roughness recovered from zero-crossing counts;
- `ess_wavelet`: closed form for band power obtained from a Gaussian-
  envelope (Morlet) wavelet transform with a given cycle count.

Estimates are clamped to [5, n]; the raw value and a flag are kept for
diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from esskit import _backend
from esskit.errors import (
    DegenerateInputError,
    InvalidAcfError,
    LengthMismatchError,
    NonPositiveDenominatorError,
    ParameterError,
)
from esskit.series import Roughness, TimeSeries, roughness, zero_crossings
from esskit.spectral import AcfEstimate, acf_fft, acf_welch

ESS_METHODS = (
    "quenouille-fft",
    "quenouille-welch",
    "quenouille-parametric",
    "laplace-derivative",
    "rice",
    "wavelet",
    "analytic",
)

#: Clamp floor: the Fisher statistic needs nu > 3 to exist, and 5 leaves
#: margin; the ceiling n is the information content of the raw sample.
NU_MIN = 5.0

_RHO0_TOL = 1e-6


@dataclass(frozen=True)
class EssEstimate:
    """An effective sample size with clamping diagnostics."""

    nu: float
    nu_raw: float
    method: str
    clamped: bool
    n: int

    def __post_init__(self):
        if self.method not in ESS_METHODS:
            raise ParameterError(f"unknown ESS method {self.method!r}")
        if not self.nu_raw > 0:
            raise ParameterError(f"raw ESS must be positive, got {self.nu_raw}")
        if not NU_MIN <= self.nu <= self.n:
            raise ParameterError(f"clamped ESS {self.nu} outside [{NU_MIN}, {self.n}]")


def _clamped(nu_raw: float, n: int, method: str) -> EssEstimate:
    nu = min(max(nu_raw, NU_MIN), float(n))
    return EssEstimate(nu=nu, nu_raw=float(nu_raw), method=method, clamped=(nu != nu_raw), n=n)


def _roughness_value(rough: Roughness | float, name: str) -> float:
    value = rough.value if isinstance(rough, Roughness) else float(rough)
    if not math.isfinite(value) or value < 0:
        raise ParameterError(f"{name} must be finite and non-negative, got {value}")
    return value


def _check_pair(x: TimeSeries, y: TimeSeries) -> int:
    if len(x) != len(y):
        raise LengthMismatchError(f"series lengths differ: {len(x)} vs {len(y)}")
    if x.dt != y.dt:
        raise ParameterError(f"sampling intervals differ: {x.dt} vs {y.dt}")
    n = len(x)
    if n < 8:
        raise DegenerateInputError(f"ESS estimation requires at least 8 samples, got {n}")
    return n


def ess_quenouille(acf_x: AcfEstimate, acf_y: AcfEstimate, n: int) -> EssEstimate:
    """ESS from the finite sum over lagged ACF products.

    nu = n / (rho_0 gamma_0 + 2 sum_k w_k rho_k gamma_k), truncated at
    L = min(len(rho), len(gamma), n). The biased sample ACFs from the
    FFT/Welch backends already absorb the (n-k)/n taper, so w_k = 1 for
    them; only a pair of parametric ACFs gets the explicit taper.
    Re-applying it to sample ACFs would double-taper, which is the one
    equivalence this function must protect.
    """
    if n < 8:
        raise ParameterError(f"ESS estimation requires n >= 8, got {n}")
    for acf in (acf_x, acf_y):
        if abs(acf.rho[0] - 1.0) > _RHO0_TOL:
            raise InvalidAcfError(f"ACF not normalized at lag 0: {acf.rho[0]!r}")
    parametric = {acf_x.method, acf_y.method} == {"gaussian-parametric"}
    denominator = _backend.lagged_product_sum(acf_x.rho, acf_y.rho, n, taper=parametric)
    if denominator <= 0:
        raise NonPositiveDenominatorError(
            f"lagged ACF-product sum is {denominator}; the ACF estimate is unusable"
        )
    if parametric:
        method = "quenouille-parametric"
    elif "welch" in (acf_x.method, acf_y.method):
        method = "quenouille-welch"
    else:
        method = "quenouille-fft"
    return _clamped(n / denominator, n, method)


def ess_asymptotic_integral(
    rough_x: Roughness | float, rough_y: Roughness | float, n: int
) -> EssEstimate:
    """ESS by adaptive quadrature of the Gaussian ACF-product integral.

    Integrates exp(-(r_x + r_y) tau^2 / 2) over the real line, truncated
    where the integrand falls below 1e-16, to relative accuracy better
    than 1e-9. Exists as the independent oracle for `ess_laplace_roughness`,
    so it must stay strictly more accurate than the tolerance it certifies.
    """
    r_x = _roughness_value(rough_x, "rough_x")
    r_y = _roughness_value(rough_y, "rough_y")
    if r_x <= 0 or r_y <= 0:
        raise ParameterError(f"both roughness values must be positive, got {r_x}, {r_y}")
    if n < 8:
        raise ParameterError(f"ESS estimation requires n >= 8, got {n}")
    total = r_x + r_y
    cutoff = math.sqrt(2.0 * math.log(1e16) / total)
    area, _ = integrate.quad(
        lambda tau: math.exp(-0.5 * total * tau * tau), -cutoff, cutoff, epsabs=0, epsrel=1e-12
    )
    return _clamped(n / area, n, "analytic")


def ess_laplace_roughness(
    rough_x: Roughness | float, rough_y: Roughness | float, n: int
) -> EssEstimate:
    """Closed form n * sqrt((r_x + r_y) / (2 pi)) for per-sample roughness."""
    r_x = _roughness_value(rough_x, "rough_x")
    r_y = _roughness_value(rough_y, "rough_y")
    if n < 8:
        raise ParameterError(f"ESS estimation requires n >= 8, got {n}")
    if r_x + r_y == 0:
        raise DegenerateInputError("both roughness values are zero; ESS undefined")
    estimated = all(
        isinstance(r, Roughness) and r.source == "derivative-variance"
        for r in (rough_x, rough_y)
    )
    method = "laplace-derivative" if estimated else "analytic"
    return _clamped(n * math.sqrt((r_x + r_y) / (2.0 * math.pi)), n, method)


def _laplace_pair_nu(x: TimeSeries, y: TimeSeries, moments=None) -> float:
    """Raw derivative-variance ESS; ``moments`` hook lets benchmarks pin a backend."""
    moments = moments or _backend.series_moments
    n = len(x)
    combined = 0.0
    for ts in (x, y):
        var_v, var_d = moments(ts.values)
        if var_v == 0.0:
            raise DegenerateInputError("roughness is undefined for a constant series")
        combined += var_d / var_v
    if combined == 0.0:
        raise DegenerateInputError("both series have zero roughness; ESS undefined")
    return n * math.sqrt(combined / (2.0 * math.pi))


def ess_laplace(x: TimeSeries, y: TimeSeries) -> EssEstimate:
    """Derivative-variance ESS of a pair of series.

    Roughness is estimated per series as var(diff) / var, which is the
    per-sample form the closed expression needs regardless of dt, and
    which makes the estimate affine-invariant.
    """
    n = _check_pair(x, y)
    return _clamped(_laplace_pair_nu(x, y), n, "laplace-derivative")


def ess_rice(x: TimeSeries, y: TimeSeries) -> EssEstimate:
    """ESS from zero-crossing counts.

    The expected crossing count of a smooth stationary Gaussian process
    is n sqrt(r) / pi, so each series contributes an equivalent
    roughness (pi N0 / n)^2 and the pair combines through the same
    closed form as the derivative estimator, keeping the two routes
    consistent under roughness averaging.
    """
    n = _check_pair(x, y)
    combined = 0.0
    for ts in (x, y):
        count = zero_crossings(ts)
        if count == 0:
            raise DegenerateInputError("series never crosses its mean; Rice ESS undefined")
        combined += (math.pi * count / n) ** 2
    return _clamped(n * math.sqrt(combined / (2.0 * math.pi)), n, "rice")


def ess_wavelet(n: int, f1: float, f2: float, n_cycles: float) -> EssEstimate:
    """Closed-form ESS for Gaussian-envelope wavelet power at two bands.

    Frequencies are normalized (cycles per sample); callers holding
    physical frequencies divide by the sampling rate first. The power
    series at frequency f from an n_cycles-cycle wavelet has roughness
    approximately (pi f / n_cycles)^2, which the usual closed form turns
    into nu = (n / n_cycles) sqrt(pi / 2) sqrt(f1^2 + f2^2).
    """
    if n < 8:
        raise ParameterError(f"ESS estimation requires n >= 8, got {n}")
    for name, f in (("f1", f1), ("f2", f2)):
        if not 0 < f < 0.5:
            raise ParameterError(f"{name} must lie in (0, 0.5) cycles/sample, got {f}")
    if not n_cycles > 0:
        raise ParameterError(f"n_cycles must be positive, got {n_cycles}")
    nu_raw = (n / n_cycles) * math.sqrt(math.pi / 2.0) * math.hypot(f1, f2)
    return _clamped(nu_raw, n, "wavelet")


PAIR_ESS_DISPATCH = ("derivative", "fft", "welch", "rice")


def estimate_pair_ess(x: TimeSeries, y: TimeSeries, method: str = "derivative") -> EssEstimate:
    """Dispatch a pair ESS estimate by short method name."""
    n = _check_pair(x, y)
    if method == "derivative":
        return ess_laplace(x, y)
    if method == "fft":
        return ess_quenouille(acf_fft(x), acf_fft(y), n)
    if method == "welch":
        return ess_quenouille(acf_welch(x), acf_welch(y), n)
    if method == "rice":
        return ess_rice(x, y)
    raise ParameterError(f"unknown ESS method {method!r}; expected one of {PAIR_ESS_DISPATCH}")
