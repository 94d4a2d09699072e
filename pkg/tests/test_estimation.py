"""Covariance estimation, bootstrap errors, histograms, KS diagnostics.

Reference points: textbook sample variance, closed-form standard error of
the mean (sigma/sqrt(M)), the exact KS distance of tiny point sets against
the normal distribution function, and invariances (permutation, shift,
scale) that the estimators must satisfy.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from boolcov.estimation import (
    CovarianceEstimate,
    bootstrap_se,
    estimate_cov,
    histogram,
    ks_normal,
    standardize,
)

PHI_AT_1 = 0.8413447460685429  # standard normal CDF at 1


def as_results(matrix):
    return np.asarray(matrix, dtype=float)


class TestEstimateCov:
    def test_textbook_variance(self):
        x = as_results([[1, 1, 1], [2, 2, 2], [3, 3, 3]])
        est = estimate_cov(x, area=1.0, bootstrap_b=10)
        assert est.cov == pytest.approx(np.ones((3, 3)), rel=1e-14)
        assert est.mean == pytest.approx([2.0, 2.0, 2.0])
        assert est.M == 3 and est.B == 10

    def test_constant_inputs(self):
        x = np.tile([4.0, 5.0, 6.0], (50, 1))
        est = estimate_cov(x, area=2.0, bootstrap_b=20)
        assert np.all(est.cov == 0.0)
        assert np.all(est.se == 0.0)

    def test_area_scaling(self):
        x = np.random.default_rng(0).normal(size=(200, 3))
        a = estimate_cov(x, area=1.0, bootstrap_b=2)
        b = estimate_cov(x, area=4.0, bootstrap_b=2)
        assert b.cov == pytest.approx(a.cov / 4.0, rel=1e-12)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(100, 3))
        perm = rng.permutation(100)
        a = estimate_cov(x, area=1.0, bootstrap_b=2)
        b = estimate_cov(x[perm], area=1.0, bootstrap_b=2)
        assert b.cov == pytest.approx(a.cov, rel=1e-10)
        assert b.mean == pytest.approx(a.mean, rel=1e-12)

    def test_shift_invariance_and_quadratic_scaling(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=(150, 3))
        a = estimate_cov(x, area=1.0, bootstrap_b=2)
        shifted = x + np.array([10.0, -5.0, 1e6])
        b = estimate_cov(shifted, area=1.0, bootstrap_b=2)
        assert b.cov == pytest.approx(a.cov, rel=1e-7)
        scaled = x * np.array([1.0, 3.0, 1.0])
        c = estimate_cov(scaled, area=1.0, bootstrap_b=2)
        assert c.cov[1, 1] == pytest.approx(9.0 * a.cov[1, 1], rel=1e-12)
        assert c.cov[0, 1] == pytest.approx(3.0 * a.cov[0, 1], rel=1e-12)

    def test_bootstrap_determinism(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(80, 3))
        a = estimate_cov(x, area=1.0, bootstrap_b=50, bootstrap_seed=9)
        b = estimate_cov(x, area=1.0, bootstrap_b=50, bootstrap_seed=9)
        c = estimate_cov(x, area=1.0, bootstrap_b=50, bootstrap_seed=10)
        assert np.array_equal(a.se, b.se)
        assert not np.array_equal(a.se, c.se)

    def test_se_magnitude_for_gaussian_variance(self):
        # variance estimator of N(0,1): se ~ sqrt(2/M); bootstrap should land
        # in the right ballpark
        rng = np.random.default_rng(4)
        x = rng.normal(size=(4000, 3))
        est = estimate_cov(x, area=1.0, bootstrap_b=400, bootstrap_seed=1)
        expected = math.sqrt(2.0 / 4000)
        for i in range(3):
            assert est.se[i, i] == pytest.approx(expected, rel=0.25)

    def test_min_samples(self):
        with pytest.raises(ValueError):
            estimate_cov(as_results([[1, 2, 3]]), area=1.0)

    def test_symmetry_invariant(self):
        x = np.random.default_rng(5).normal(size=(60, 3))
        est = estimate_cov(x, area=1.0, bootstrap_b=5)
        assert np.array_equal(est.cov, est.cov.T)
        assert np.all(np.diag(est.cov) >= 0.0)
        assert np.all(est.se >= 0.0)


class TestBootstrapSe:
    def test_se_of_mean_matches_closed_form(self):
        rng = np.random.default_rng(6)
        x = rng.normal(size=10_000)
        se = bootstrap_se(x, np.mean, b=500, seed=3)
        assert se == pytest.approx(0.01, rel=0.15)


class TestStandardize:
    def test_mean_zero_variance_one(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=(500, 3)) * [3.0, 0.1, 40.0] + [5.0, -2.0, 0.0]
        z = standardize(x)
        assert np.abs(z.mean(axis=0)).max() < 1e-12
        assert np.abs(z.var(axis=0, ddof=1) - 1.0).max() < 1e-12

    def test_affine_invariance(self):
        rng = np.random.default_rng(8)
        x = rng.normal(size=(200, 3))
        z1 = standardize(x)
        z2 = standardize(x * 7.5 + 300.0)
        assert z2 == pytest.approx(z1, abs=1e-10)

    def test_degenerate_component_rejected(self):
        x = np.random.default_rng(9).normal(size=(50, 3))
        x[:, 1] = 42.0
        with pytest.raises(ValueError, match="v1"):
            standardize(x)


class TestHistogram:
    def test_single_value(self):
        h = histogram(np.array([0.1]), lo=-5.0, hi=5.0, bins=40)
        width = 10.0 / 40
        assert h.weights.sum() * width == pytest.approx(1.0)
        assert h.weights.max() == pytest.approx(1.0 / width)
        assert h.n_below == 0 and h.n_above == 0 and h.total == 1

    def test_normalization_with_overflow(self):
        vals = np.array([-7.0, 0.0, 0.0, 1.0, 9.0])
        h = histogram(vals, lo=-5.0, hi=5.0, bins=10)
        width = 1.0
        assert h.n_below == 1 and h.n_above == 1 and h.total == 5
        assert h.weights.sum() * width == pytest.approx(3.0 / 5.0)

    def test_flat_for_uniform(self):
        rng = np.random.default_rng(10)
        vals = rng.uniform(-5.0, 5.0, 200_000)
        h = histogram(vals, lo=-5.0, hi=5.0, bins=20)
        # each bin's weight estimates the uniform density 0.1
        assert h.weights == pytest.approx(np.full(20, 0.1), abs=0.004)

    def test_edges(self):
        h = histogram(np.array([0.0]), lo=-1.0, hi=1.0, bins=4)
        assert h.edges == pytest.approx(np.linspace(-1.0, 1.0, 5))


class TestKsNormal:
    def test_point_mass_at_zero(self):
        assert ks_normal(np.zeros(10)) == pytest.approx(0.5, rel=1e-12)

    def test_two_points(self):
        assert ks_normal(np.array([-1.0, 1.0])) == pytest.approx(
            PHI_AT_1 - 0.5, rel=1e-12
        )

    def test_shifted_far(self):
        assert ks_normal(np.full(100, 5.0)) > 0.99

    def test_large_normal_sample(self):
        vals = np.random.default_rng(11).normal(size=1_000_000)
        assert ks_normal(vals) <= 0.002


class TestCovarianceEstimateType:
    def test_fields(self):
        x = np.random.default_rng(12).normal(size=(40, 3))
        est = estimate_cov(x, area=2.0, bootstrap_b=30, bootstrap_seed=4)
        assert isinstance(est, CovarianceEstimate)
        assert est.mean.shape == (3,)
        assert est.cov.shape == (3, 3)
        assert est.se.shape == (3, 3)
        assert est.se_mean.shape == (3,)
