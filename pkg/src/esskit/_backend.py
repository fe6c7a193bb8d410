"""Kernel backend selection.

Imports the compiled Cython kernels when the extension built, otherwise
falls back to the numpy implementations. The choice is made once at
import; `backend_name()` reports which one is active. Benchmarks and
parity tests import both modules directly instead of going through here.
"""

import numpy as np

from esskit import _kernels_py

try:
    from esskit import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _impl = _kernels_py
    BACKEND = "numpy"


def backend_name() -> str:
    return BACKEND


def _as_buffer(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def variance(x) -> float:
    return float(_impl.variance(_as_buffer(x)))


def series_moments(x) -> tuple[float, float]:
    var_x, var_d = _impl.series_moments(_as_buffer(x))
    return float(var_x), float(var_d)


def zero_crossings(x) -> int:
    return int(_impl.zero_crossings(_as_buffer(x)))


def lagged_product_sum(rho, gamma, n: int, taper: bool) -> float:
    return float(_impl.lagged_product_sum(_as_buffer(rho), _as_buffer(gamma), int(n), bool(taper)))
