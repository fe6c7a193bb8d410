"""Tests for the effective sample size estimators."""

import math

import numpy as np
import pytest

from esskit import (
    GpgaSpec,
    TimeSeries,
    acf_gaussian,
    derive_seed,
    ess_asymptotic_integral,
    ess_laplace,
    ess_laplace_roughness,
    ess_quenouille,
    ess_rice,
    ess_wavelet,
    estimate_pair_ess,
    sample,
    theoretical_ess_factor,
)
from esskit.errors import (
    DegenerateInputError,
    InvalidAcfError,
    LengthMismatchError,
    NonPositiveDenominatorError,
    ParameterError,
)
from esskit.ess import EssEstimate
from esskit.spectral import AcfEstimate, acf_fft, acf_welch

ROUGHNESS_GRID = (1e-4, 1e-3, 1e-2, 1e-1)


def delta_acf(n: int) -> AcfEstimate:
    rho = np.zeros(n)
    rho[0] = 1.0
    return AcfEstimate(rho=rho, method="fft", n_source=n)


class TestEssEstimate:
    def test_rejects_unknown_method(self):
        with pytest.raises(ParameterError):
            EssEstimate(nu=10.0, nu_raw=10.0, method="bartlett", clamped=False, n=100)

    def test_rejects_non_positive_raw(self):
        with pytest.raises(ParameterError):
            EssEstimate(nu=5.0, nu_raw=0.0, method="analytic", clamped=True, n=100)

    def test_rejects_out_of_range_nu(self):
        with pytest.raises(ParameterError):
            EssEstimate(nu=120.0, nu_raw=120.0, method="analytic", clamped=False, n=100)


class TestQuenouille:
    def test_independent_samples(self):
        est = ess_quenouille(delta_acf(1000), delta_acf(1000), 1000)
        assert est.nu == pytest.approx(1000.0)
        assert est.method == "quenouille-fft"
        assert not est.clamped

    def test_geometric_acf_closed_form(self):
        # rho_k = gamma_k = 0.5^k with parametric taper; the denominator
        # follows from sum a^k = a/(1-a) and sum k a^k = a/(1-a)^2
        n = 10**4
        k = np.arange(n, dtype=np.float64)
        rho = 0.5**k
        acf = AcfEstimate(rho=rho, method="gaussian-parametric", n_source=n)
        a = 0.25
        expected_denominator = 1.0 + 2.0 * (a / (1 - a) - (1 / n) * a / (1 - a) ** 2)
        est = ess_quenouille(acf, acf, n)
        assert est.method == "quenouille-parametric"
        assert est.nu == pytest.approx(n / expected_denominator, rel=1e-12)
        assert est.nu == pytest.approx(6000.32, abs=0.1)

    def test_parametric_converges_to_laplace(self):
        rough = 1e-2
        for n, tol in ((2000, 0.03), (20000, 0.005)):
            acf = acf_gaussian(rough, n)
            quen = ess_quenouille(acf, acf, n)
            lap = ess_laplace_roughness(rough, rough, n)
            assert abs(quen.nu - lap.nu) / lap.nu < tol

    def test_taper_only_for_parametric_pairs(self):
        # a biased sample ACF already carries (n-k)/n, so mixing it with
        # a parametric ACF must not re-apply the taper
        n = 5000
        rng = np.random.default_rng(14)
        sample_acf = acf_fft(TimeSeries(rng.standard_normal(n)))
        parametric = acf_gaussian(1e-2, n)
        mixed = ess_quenouille(sample_acf, parametric, n)
        assert mixed.method == "quenouille-fft"
        untapered = float(
            1.0 + 2.0 * np.sum(sample_acf.rho[1:n] * parametric.rho[1:n])
        )
        assert mixed.nu_raw == pytest.approx(n / untapered, rel=1e-12)

    def test_rejects_unnormalized_acf(self):
        bad = AcfEstimate(rho=np.array([1.0, 0.5]), method="fft", n_source=1000)
        object.__setattr__(bad, "rho", np.array([0.99, 0.5]))
        with pytest.raises(InvalidAcfError):
            ess_quenouille(bad, delta_acf(1000), 1000)

    def test_non_positive_denominator(self):
        # a smooth sine against an alternating series pushes the
        # truncated Welch product sum negative
        n = 600
        t = np.arange(n, dtype=np.float64)
        smooth = acf_welch(TimeSeries(np.sin(2 * np.pi * t / 32)))
        alternating = acf_welch(TimeSeries((-1.0) ** t))
        with pytest.raises(NonPositiveDenominatorError):
            ess_quenouille(smooth, alternating, n)

    def test_small_n_rejected(self):
        with pytest.raises(ParameterError):
            ess_quenouille(delta_acf(4), delta_acf(4), 4)


class TestAsymptoticIntegral:
    def test_gaussian_integral_identity(self):
        # quadrature area must equal sqrt(pi / r) for equal roughness
        for rough in ROUGHNESS_GRID:
            est = ess_asymptotic_integral(rough, rough, 10**6)
            expected = 10**6 / math.sqrt(math.pi / rough)
            assert est.nu_raw == pytest.approx(expected, rel=1e-9)

    def test_heterogeneous_closed_form(self):
        est = ess_asymptotic_integral(3e-2, 1e-2, 2000)
        assert est.nu == pytest.approx(2000 * math.sqrt(4e-2 / (2 * math.pi)), rel=1e-6)
        assert est.nu == pytest.approx(159.5769, abs=1e-3)
        assert est.method == "analytic"

    def test_rejects_non_positive_roughness(self):
        with pytest.raises(ParameterError):
            ess_asymptotic_integral(2 * math.pi, 0.0, 1000)
        with pytest.raises(ParameterError):
            ess_asymptotic_integral(-1.0, 1e-2, 1000)


class TestLaplace:
    def test_prescribed_pi_cancellation(self):
        est = ess_laplace_roughness(math.pi, math.pi, 1000)
        assert est.nu == pytest.approx(1000.0, rel=1e-12)
        assert not est.clamped
        assert est.method == "analytic"

    def test_prescribed_derivative_variances(self):
        est = ess_laplace_roughness(2e-2, 2e-2, 2000)
        assert est.nu == pytest.approx(159.5769, abs=1e-3)

    def test_quadrature_agreement_grid(self):
        # closed form vs the quadrature oracle over the roughness grid
        for r_x in ROUGHNESS_GRID:
            for r_y in ROUGHNESS_GRID:
                closed = ess_laplace_roughness(r_x, r_y, 2000)
                quad = ess_asymptotic_integral(r_x, r_y, 2000)
                assert abs(closed.nu_raw - quad.nu_raw) / quad.nu_raw < 1e-6

    def test_gpga_pair_tracks_theory(self):
        factors = []
        for i in range(30):
            x = sample(GpgaSpec(1e-2, 2000, derive_seed(77, i, 0)))
            y = sample(GpgaSpec(1e-2, 2000, derive_seed(77, i, 1)))
            factors.append(ess_laplace(x, y).nu / 2000)
        assert np.mean(factors) == pytest.approx(theoretical_ess_factor(1e-2), rel=0.10)

    def test_affine_invariance(self):
        x = sample(GpgaSpec(1e-2, 1000, seed=31))
        y = sample(GpgaSpec(1e-2, 1000, seed=32))
        ref = ess_laplace(x, y).nu
        moved = ess_laplace(
            TimeSeries(2.0 * x.values + 1.0), TimeSeries(-3.0 * y.values)
        ).nu
        assert abs(moved - ref) / ref < 1e-10

    def test_method_tag_from_series(self):
        x = sample(GpgaSpec(1e-2, 1000, seed=33))
        y = sample(GpgaSpec(1e-2, 1000, seed=34))
        assert ess_laplace(x, y).method == "laplace-derivative"

    def test_dt_invariance(self):
        # ESS counts equivalent independent samples, so resampling
        # metadata must not move it
        x = sample(GpgaSpec(1e-2, 1000, seed=37))
        y = sample(GpgaSpec(1e-2, 1000, seed=38))
        rescaled = ess_laplace(
            TimeSeries(x.values, dt=0.25), TimeSeries(y.values, dt=0.25)
        )
        assert rescaled.nu == ess_laplace(x, y).nu

    def test_estimated_roughness_objects_keep_tag(self):
        from esskit.series import roughness

        x = sample(GpgaSpec(1e-2, 1000, seed=35))
        y = sample(GpgaSpec(1e-2, 1000, seed=36))
        est = ess_laplace_roughness(roughness(x), roughness(y), 1000)
        assert est.method == "laplace-derivative"

    def test_length_mismatch(self):
        x = sample(GpgaSpec(1e-2, 1000, seed=1))
        y = sample(GpgaSpec(1e-2, 1001, seed=2))
        with pytest.raises(LengthMismatchError):
            ess_laplace(x, y)

    def test_constant_series_rejected(self):
        x = sample(GpgaSpec(1e-2, 1000, seed=1))
        with pytest.raises(DegenerateInputError):
            ess_laplace(x, TimeSeries(np.full(1000, 2.0)))

    def test_zero_roughness_pair_rejected(self):
        ramp = TimeSeries(np.arange(1000.0))
        with pytest.raises(DegenerateInputError):
            ess_laplace(ramp, ramp)


class TestRice:
    def test_alternating_pair_clamps_to_n(self):
        n = 1000
        alternating = TimeSeries(np.array([(-1.0) ** t for t in range(n)]))
        est = ess_rice(alternating, alternating)
        assert est.nu == n
        assert est.clamped
        assert est.nu_raw > n

    def test_tracks_laplace_on_gpga(self):
        x = sample(GpgaSpec(1e-2, 10**5, seed=41))
        y = sample(GpgaSpec(1e-2, 10**5, seed=42))
        rice = ess_rice(x, y)
        lap = ess_laplace(x, y)
        assert abs(rice.nu - lap.nu) / lap.nu < 0.10
        assert rice.method == "rice"

    def test_constant_series_rejected(self):
        x = sample(GpgaSpec(1e-2, 1000, seed=43))
        with pytest.raises(DegenerateInputError):
            ess_rice(x, TimeSeries(np.zeros(1000)))


class TestWavelet:
    def test_equal_frequency_reduction_grid(self):
        # nu identical to sqrt(pi) n f / n_cycles when f1 = f2
        rng = np.random.default_rng(55)
        for _ in range(100):
            n = int(rng.integers(100, 10**6))
            f = float(rng.uniform(1e-4, 0.499))
            n_cycles = float(rng.uniform(0.5, 20.0))
            est = ess_wavelet(n, f, f, n_cycles)
            expected = math.sqrt(math.pi) * n * f / n_cycles
            assert abs(est.nu_raw - expected) / expected < 1e-12

    def test_known_values(self):
        assert ess_wavelet(12800, 0.078125, 0.078125, 7).nu == pytest.approx(
            253.20769298650228, rel=1e-12
        )
        assert ess_wavelet(10**4, 0.03, 0.04, 7).nu == pytest.approx(
            89.52243837967859, rel=1e-12
        )

    def test_parameter_domain(self):
        with pytest.raises(ParameterError):
            ess_wavelet(1000, 0.0, 0.1, 7)
        with pytest.raises(ParameterError):
            ess_wavelet(1000, 0.1, 0.5, 7)
        with pytest.raises(ParameterError):
            ess_wavelet(1000, 0.1, 0.1, 0.0)
        with pytest.raises(ParameterError):
            ess_wavelet(4, 0.1, 0.1, 7)

    def test_clamps_at_n(self):
        est = ess_wavelet(100, 0.49, 0.49, 0.5)
        assert est.nu == 100.0
        assert est.clamped


class TestCrossEstimatorProperties:
    def test_pair_symmetry_is_exact(self):
        x = sample(GpgaSpec(1e-2, 2000, seed=61))
        y = sample(GpgaSpec(3e-2, 2000, seed=62))
        assert ess_laplace(x, y).nu == ess_laplace(y, x).nu
        assert ess_rice(x, y).nu == ess_rice(y, x).nu
        ax, ay = acf_fft(x), acf_fft(y)
        assert ess_quenouille(ax, ay, 2000).nu == ess_quenouille(ay, ax, 2000).nu

    def test_heterogeneous_reduces_to_mean_roughness(self):
        # pair (r_x, r_y) is exactly the homogeneous pair at the mean
        for r_x, r_y in ((1e-4, 1e-1), (2e-3, 5e-2), (0.3, 0.7)):
            mean = (r_x + r_y) / 2.0
            direct = ess_laplace_roughness(r_x, r_y, 4000)
            reduced = ess_laplace_roughness(mean, mean, 4000)
            assert direct.nu_raw == reduced.nu_raw

    def test_monotone_in_each_roughness(self):
        base = ess_laplace_roughness(1e-3, 1e-2, 5000).nu_raw
        assert ess_laplace_roughness(2e-3, 1e-2, 5000).nu_raw > base
        assert ess_laplace_roughness(1e-3, 2e-2, 5000).nu_raw > base

    def test_clamp_floor(self):
        est = ess_laplace_roughness(1e-8, 1e-8, 1000)
        assert est.nu == 5.0
        assert est.clamped
        assert est.nu_raw < 5.0


class TestDispatch:
    def test_method_tags(self):
        x = sample(GpgaSpec(1e-2, 2000, seed=71))
        y = sample(GpgaSpec(1e-2, 2000, seed=72))
        assert estimate_pair_ess(x, y, "derivative").method == "laplace-derivative"
        assert estimate_pair_ess(x, y, "fft").method == "quenouille-fft"
        assert estimate_pair_ess(x, y, "welch").method == "quenouille-welch"
        assert estimate_pair_ess(x, y, "rice").method == "rice"

    def test_unknown_method(self):
        x = sample(GpgaSpec(1e-2, 2000, seed=73))
        with pytest.raises(ParameterError):
            estimate_pair_ess(x, x, "bartlett")
