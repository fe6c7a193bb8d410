"""Tests for the Gaussian-ACF sample path generator."""

import math

import numpy as np
import pytest

from esskit import GpgaSpec, acf_fft, derive_seed, sample, theoretical_ess_factor
from esskit.errors import ParameterError, ResourceLimitError
from esskit.series import roughness, variance, zero_crossings


class TestGpgaSpec:
    def test_roughness_domain(self):
        with pytest.raises(ParameterError):
            GpgaSpec(roughness=0.0, length=100, seed=0)
        with pytest.raises(ParameterError):
            GpgaSpec(roughness=-1e-3, length=100, seed=0)
        with pytest.raises(ParameterError):
            GpgaSpec(roughness=4.5, length=100, seed=0)

    def test_length_and_seed_domain(self):
        with pytest.raises(ParameterError):
            GpgaSpec(roughness=1e-2, length=7, seed=0)
        with pytest.raises(ParameterError):
            GpgaSpec(roughness=1e-2, length=100, seed=-1)


class TestSample:
    def test_exact_length(self):
        for n in (8, 100, 4097):
            assert len(sample(GpgaSpec(roughness=1e-2, length=n, seed=3))) == n

    def test_deterministic_bitwise(self):
        spec = GpgaSpec(roughness=1e-3, length=2000, seed=42)
        a = sample(spec)
        b = sample(spec)
        assert np.array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        a = sample(GpgaSpec(roughness=1e-3, length=2000, seed=1))
        b = sample(GpgaSpec(roughness=1e-3, length=2000, seed=2))
        assert not np.array_equal(a.values, b.values)

    def test_roughness_recovery(self):
        path = sample(GpgaSpec(roughness=1e-2, length=10**5, seed=7))
        assert roughness(path).value == pytest.approx(1e-2, rel=0.05)

    def test_sample_acf_tracks_target(self):
        path = sample(GpgaSpec(roughness=1e-2, length=10**4, seed=12))
        k = np.arange(31)
        target = np.exp(-1e-2 * k**2 / 2)
        assert np.max(np.abs(acf_fft(path).rho[:31] - target)) < 0.1

    def test_kernel_radius_cap(self):
        with pytest.raises(ResourceLimitError):
            sample(GpgaSpec(roughness=1e-4, length=1000, seed=0), kernel_radius_cap=10)


class TestPopulationMoments:
    def test_variance_and_mean_recovery(self):
        variances = []
        means = []
        for i in range(200):
            path = sample(GpgaSpec(roughness=1e-2, length=10**4, seed=derive_seed(123, i)))
            variances.append(variance(path))
            means.append(float(np.mean(path.values)))
        assert 0.9 < np.mean(variances) < 1.1
        assert -0.05 < np.mean(means) < 0.05

    def test_average_acf_shape(self):
        # ensemble ACF matches the target out to two correlation lengths
        k = np.arange(21)
        target = np.exp(-1e-2 * k**2 / 2)
        acc = np.zeros(21)
        for i in range(200):
            path = sample(GpgaSpec(roughness=1e-2, length=10**4, seed=derive_seed(321, i)))
            acc += acf_fft(path).rho[:21]
        assert np.max(np.abs(acc / 200 - target)) < 0.03

    def test_roughness_sweep_monotone(self):
        grid = (1e-4, 1e-3, 1e-2, 1e-1)
        means = []
        for cell, rough in enumerate(grid):
            estimates = [
                roughness(
                    sample(GpgaSpec(roughness=rough, length=2000, seed=derive_seed(9, cell, i)))
                ).value
                for i in range(50)
            ]
            means.append(np.mean(estimates))
        assert all(a < b for a, b in zip(means, means[1:]))

    def test_zero_crossing_rate(self):
        # crossing count tracks n sqrt(r) / pi once n sqrt(r) >= 1e3
        for rough, n, seed in ((1e-2, 10**5, 7), (1e-2, 10**4, 8), (1e-1, 10**4, 9)):
            path = sample(GpgaSpec(roughness=rough, length=n, seed=seed))
            expected = n * math.sqrt(rough) / math.pi
            assert zero_crossings(path) == pytest.approx(expected, rel=0.10)


class TestTheoreticalEssFactor:
    def test_algebraic_cancellation(self):
        assert theoretical_ess_factor(math.pi) == pytest.approx(1.0, rel=1e-15)

    def test_known_values(self):
        assert theoretical_ess_factor(1e-2) == pytest.approx(0.056418958, rel=1e-8)
        assert theoretical_ess_factor(1e-4) == pytest.approx(0.0056418958, rel=1e-8)

    def test_rejects_non_positive(self):
        with pytest.raises(ParameterError):
            theoretical_ess_factor(0.0)
        with pytest.raises(ParameterError):
            theoretical_ess_factor(-0.5)


class TestDeriveSeed:
    def test_deterministic(self):
        assert derive_seed(5, 3) == derive_seed(5, 3)
        assert derive_seed(5, 1, 2) == derive_seed(5, 1, 2)

    def test_distinct_across_indices(self):
        seeds = {derive_seed(5, i) for i in range(1000)}
        assert len(seeds) == 1000

    def test_distinct_across_masters(self):
        assert derive_seed(1, 0) != derive_seed(2, 0)

    def test_key_depth_matters(self):
        assert derive_seed(1, 0, 1) != derive_seed(1, 1, 0)
