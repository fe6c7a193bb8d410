"""Effective sample size and correlation significance for autocorrelated time series."""

from esskit._backend import backend_name
from esskit.corrstats import (
    CorrelationTest,
    corr_test_pipeline,
    fisher_test,
    pearson,
    significance_quantile,
    spearman,
)
from esskit.ess import (
    EssEstimate,
    ess_asymptotic_integral,
    ess_laplace,
    ess_laplace_roughness,
    ess_quenouille,
    ess_rice,
    ess_wavelet,
    estimate_pair_ess,
)
from esskit.gpga import GpgaSpec, derive_seed, sample, theoretical_ess_factor
from esskit.series import (
    Roughness,
    TimeSeries,
    diff,
    rank_transform,
    roughness,
    standardize,
    variance,
    zero_crossings,
)
from esskit.spectral import AcfEstimate, acf_fft, acf_gaussian, acf_welch

__version__ = "0.1.0"

__all__ = [
    "AcfEstimate",
    "CorrelationTest",
    "EssEstimate",
    "GpgaSpec",
    "Roughness",
    "TimeSeries",
    "acf_fft",
    "acf_gaussian",
    "acf_welch",
    "backend_name",
    "corr_test_pipeline",
    "derive_seed",
    "diff",
    "ess_asymptotic_integral",
    "ess_laplace",
    "ess_laplace_roughness",
    "ess_quenouille",
    "ess_rice",
    "ess_wavelet",
    "estimate_pair_ess",
    "fisher_test",
    "pearson",
    "rank_transform",
    "roughness",
    "sample",
    "significance_quantile",
    "spearman",
    "standardize",
    "theoretical_ess_factor",
    "variance",
    "zero_crossings",
]
