"""Numpy fallback for the compiled kernels in ``esskit._kernels``.

Kept signature- and behaviour-identical to the Cython module so either
can back ``esskit._backend``; the parity tests enforce this.
"""

import numpy as np


def variance(x: np.ndarray) -> float:
    """Unbiased sample variance."""
    if x.shape[0] < 2:
        raise ValueError("variance requires at least 2 samples")
    return float(np.var(x, ddof=1))


def series_moments(x: np.ndarray) -> tuple[float, float]:
    """Return (var(x), var(diff(x))), both unbiased, diff unscaled."""
    if x.shape[0] < 3:
        raise ValueError("series_moments requires at least 3 samples")
    return float(np.var(x, ddof=1)), float(np.var(np.diff(x), ddof=1))


def zero_crossings(x: np.ndarray) -> int:
    """Count strict sign changes of the mean-centered series.

    Zero samples carry the previous nonzero sign (achieved here by
    dropping them before comparing neighbours); returns -1 when every
    centered sample is zero.
    """
    signs = np.sign(x - np.mean(x))
    signs = signs[signs != 0]
    if signs.size == 0:
        return -1
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def lagged_product_sum(rho: np.ndarray, gamma: np.ndarray, n: int, taper: bool) -> float:
    """Denominator of the lagged-ACF-product ESS formula."""
    L = min(rho.shape[0], gamma.shape[0], n)
    if L < 1:
        raise ValueError("lagged_product_sum requires at least lag 0")
    k = np.arange(1, L)
    products = rho[1:L] * gamma[1:L]
    if taper:
        products = products * ((n - k) / n)
    return float(rho[0] * gamma[0] + 2.0 * np.sum(products))
