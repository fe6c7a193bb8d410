# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass kernels for the estimation hot paths.

Inputs must be C-contiguous float64 buffers; the wrappers in
``esskit._backend`` guarantee that. The numpy twin of this module is
``esskit._kernels_py``; both must stay behaviourally identical.
"""


def variance(const double[::1] x):
    """Unbiased sample variance (two-pass)."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0, ss = 0.0, m, d
    if n < 2:
        raise ValueError("variance requires at least 2 samples")
    for i in range(n):
        s += x[i]
    m = s / n
    for i in range(n):
        d = x[i] - m
        ss += d * d
    return ss / (n - 1)


def series_moments(const double[::1] x):
    """Return (var(x), var(diff(x))), both unbiased, diff unscaled.

    Fused so a series is traversed twice in total instead of the six
    passes plus temporaries the naive numpy route costs.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0, ssx = 0.0, ssd = 0.0
    cdef double mx, md, dx, dd
    if n < 3:
        raise ValueError("series_moments requires at least 3 samples")
    for i in range(n):
        s += x[i]
    mx = s / n
    # The forward differences telescope, so their mean needs no pass.
    md = (x[n - 1] - x[0]) / (n - 1)
    for i in range(n - 1):
        dx = x[i] - mx
        ssx += dx * dx
        dd = (x[i + 1] - x[i]) - md
        ssd += dd * dd
    dx = x[n - 1] - mx
    ssx += dx * dx
    return ssx / (n - 1), ssd / (n - 2)


def zero_crossings(const double[::1] x):
    """Count strict sign changes of the mean-centered series.

    Zero samples carry the previous nonzero sign; leading zeros are
    skipped. Returns -1 when every centered sample is zero.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i
    cdef double s = 0.0, m, v
    cdef long count = 0
    cdef int prev = 0, cur
    for i in range(n):
        s += x[i]
    m = s / n
    for i in range(n):
        v = x[i] - m
        if v > 0.0:
            cur = 1
        elif v < 0.0:
            cur = -1
        else:
            continue
        if prev != 0 and cur != prev:
            count += 1
        prev = cur
    if prev == 0:
        return -1
    return count


def lagged_product_sum(const double[::1] rho, const double[::1] gamma,
                       Py_ssize_t n, bint taper):
    """Denominator of the lagged-ACF-product ESS formula.

    Computes rho[0]*gamma[0] + 2 * sum_{k=1}^{L-1} w_k * rho[k] * gamma[k]
    with L = min(len(rho), len(gamma), n) and w_k = (n - k) / n when
    ``taper`` is set, 1 otherwise.
    """
    cdef Py_ssize_t L = rho.shape[0]
    cdef Py_ssize_t k
    cdef double acc = 0.0, w
    if gamma.shape[0] < L:
        L = gamma.shape[0]
    if n < L:
        L = n
    if L < 1:
        raise ValueError("lagged_product_sum requires at least lag 0")
    if taper:
        for k in range(1, L):
            w = (<double>(n - k)) / n
            acc += w * rho[k] * gamma[k]
    else:
        for k in range(1, L):
            acc += rho[k] * gamma[k]
    return rho[0] * gamma[0] + 2.0 * acc
