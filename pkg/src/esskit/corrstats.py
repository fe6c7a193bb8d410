"""Correlation coefficients and ESS-corrected significance machinery.

The test statistic is the Fisher-transformed coefficient scaled by
sqrt(nu - 3) where nu is an effective sample size, so the null
distribution stays standard normal for autocorrelated inputs. The
significance quantile follows the printed convention with sqrt(nu); the
dof-corrected variant with sqrt(nu - 3) is exposed behind a flag and the
two agree to better than 1e-3 for nu >= 500.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from esskit.errors import DegenerateInputError, LengthMismatchError, ParameterError
from esskit.ess import EssEstimate, estimate_pair_ess
from esskit.series import TimeSeries, rank_transform, standardize

COEFFICIENT_KINDS = ("pearson", "spearman")


@dataclass(frozen=True)
class CorrelationTest:
    """Result of one ESS-corrected correlation significance test.

    ``nu`` is normally an `EssEstimate`; a bare float is accepted for
    prescribed values. ``degenerate`` marks |r| = 1, where z diverges
    and the p-value is exactly 0.
    """

    r: float
    coefficient_kind: str
    nu: EssEstimate | float
    z: float
    p_two_sided: float
    q975: float
    alpha: float
    degenerate: bool = False

    @property
    def nu_value(self) -> float:
        return self.nu.nu if isinstance(self.nu, EssEstimate) else float(self.nu)


def normal_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF."""
    if not 0 < p < 1:
        raise ParameterError(f"quantile argument must lie in (0, 1), got {p}")
    return float(special.ndtri(p))


def _correlation_inputs(x: TimeSeries, y: TimeSeries) -> tuple[np.ndarray, np.ndarray]:
    if len(x) != len(y):
        raise LengthMismatchError(f"series lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise DegenerateInputError(f"correlation requires at least 3 samples, got {len(x)}")
    xc = x.values - np.mean(x.values)
    yc = y.values - np.mean(y.values)
    if not np.any(xc) or not np.any(yc):
        raise DegenerateInputError("correlation is undefined for a constant series")
    return xc, yc


def pearson(x: TimeSeries, y: TimeSeries) -> float:
    """Product-moment correlation coefficient, clipped to [-1, 1]."""
    xc, yc = _correlation_inputs(x, y)
    r = float(np.dot(xc, yc) / math.sqrt(np.dot(xc, xc) * np.dot(yc, yc)))
    return min(1.0, max(-1.0, r))


def spearman(x: TimeSeries, y: TimeSeries) -> float:
    """Rank correlation: the product-moment coefficient of average ranks."""
    return pearson(rank_transform(x), rank_transform(y))


def _nu_value(nu: EssEstimate | float) -> float:
    return nu.nu if isinstance(nu, EssEstimate) else float(nu)


def fisher_test(
    r: float,
    nu: EssEstimate | float,
    alpha: float = 0.05,
    coefficient_kind: str = "pearson",
) -> CorrelationTest:
    """Two-sided significance test of a coefficient at a given ESS.

    z = sqrt(nu - 3) * arctanh(r) is referred to the standard normal;
    |r| = 1 short-circuits to the exact degenerate result p = 0.
    """
    nu_val = _nu_value(nu)
    if abs(r) > 1:
        raise ParameterError(f"correlation coefficient must lie in [-1, 1], got {r}")
    if not nu_val > 3:
        raise ParameterError(f"ESS must exceed 3 for the Fisher statistic, got {nu_val}")
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if coefficient_kind not in COEFFICIENT_KINDS:
        raise ParameterError(f"unknown coefficient kind {coefficient_kind!r}")
    quantile = significance_quantile(nu_val, alpha)
    if abs(r) == 1.0:
        return CorrelationTest(
            r=float(r),
            coefficient_kind=coefficient_kind,
            nu=nu,
            z=math.copysign(math.inf, r),
            p_two_sided=0.0,
            q975=quantile,
            alpha=alpha,
            degenerate=True,
        )
    z = math.sqrt(nu_val - 3.0) * math.atanh(r)
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return CorrelationTest(
        r=float(r),
        coefficient_kind=coefficient_kind,
        nu=nu,
        z=z,
        p_two_sided=p,
        q975=quantile,
        alpha=alpha,
    )


def significance_quantile(
    nu: EssEstimate | float, alpha: float = 0.05, dof_corrected: bool = False
) -> float:
    """Smallest |r| significant at level alpha: tanh(z_{1-alpha/2} / sqrt(nu)).

    The printed convention divides by sqrt(nu); pass ``dof_corrected``
    for the sqrt(nu - 3) variant that inverts `fisher_test` exactly.
    """
    nu_val = _nu_value(nu)
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if dof_corrected:
        if not nu_val > 3:
            raise ParameterError(f"dof-corrected quantile requires ESS > 3, got {nu_val}")
        scale = math.sqrt(nu_val - 3.0)
    else:
        if not nu_val > 0:
            raise ParameterError(f"ESS must be positive, got {nu_val}")
        scale = math.sqrt(nu_val)
    return math.tanh(normal_quantile(1.0 - alpha / 2.0) / scale)


def corr_test_pipeline(
    x: TimeSeries,
    y: TimeSeries,
    coefficient_kind: str = "pearson",
    ess_method: str = "derivative",
    alpha: float = 0.05,
) -> CorrelationTest:
    """Coefficient, ESS, and significance test in one call.

    For Spearman both the coefficient and the ESS are computed on the
    rank-transformed series: the test concerns the rank series, so its
    temporal dependence is what discounts the sample size. Inputs are
    standardized first, which changes nothing statistically but keeps
    the estimators in a well-scaled regime.
    """
    if coefficient_kind not in COEFFICIENT_KINDS:
        raise ParameterError(f"unknown coefficient kind {coefficient_kind!r}")
    if coefficient_kind == "spearman":
        xs = standardize(rank_transform(x))
        ys = standardize(rank_transform(y))
    else:
        xs = standardize(x)
        ys = standardize(y)
    r = pearson(xs, ys)
    nu = estimate_pair_ess(xs, ys, ess_method)
    return fisher_test(r, nu, alpha=alpha, coefficient_kind=coefficient_kind)
