import math

import numpy as np
import pytest

from tropstat.stats import (
    TrialSummary,
    chi_square,
    chi_square_sf,
    kolmogorov_sf,
    ks_normal,
    ks_statistic,
    ks_test,
    sample_variance_error,
    slope_regression,
    slope_with_se,
    standardize,
)


class TestTrialSummary:
    def test_from_counts(self):
        s = TrialSummary.from_counts([4, 6, 5, 5], n=100, a=1.0, seed=3)
        assert s.mean == 5.0
        assert s.variance == pytest.approx(2 / 3)
        assert s.stderr == pytest.approx(math.sqrt(s.variance / 4))
        assert s.trials == 4 and s.seed == 3


class TestStandardize:
    def test_exact_zero(self):
        logn = math.log(50.0)
        z = standardize([4 / 3 * logn], 50.0, 1.0)
        assert z[0] == pytest.approx(0.0, abs=1e-12)

    def test_exact_one(self):
        n = math.exp(3.0)
        count = 4 / 3 * 3 + math.sqrt(20 / 27 * 3)
        assert standardize([count], n, 1.0)[0] == pytest.approx(1.0)

    def test_var_choices_differ_for_a_not_one(self):
        z_paper = standardize([10.0], 1000.0, 2.0, "paper")
        z_renew = standardize([10.0], 1000.0, 2.0, "renewal")
        assert z_paper[0] != z_renew[0]
        with pytest.raises(ValueError):
            standardize([10.0], 1000.0, 2.0, "other")

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            standardize([1.0], 2.0, 1.0)

    def test_scale_consistency(self):
        # doubling log n shifts the centering by mean_coeff * log 2
        n1, n2 = 100.0, 10000.0
        count = 7.0
        z1 = standardize([count], n1, 1.0)[0]
        z2 = standardize([count], n2, 1.0)[0]
        shift = 4 / 3 * math.log(n1)
        assert z1 * math.sqrt(20 / 27 * math.log(n1)) + shift == pytest.approx(count)
        assert z2 * math.sqrt(20 / 27 * math.log(n2)) + 2 * shift == pytest.approx(count)


class TestKolmogorov:
    def test_sf_limits(self):
        assert kolmogorov_sf(0.0) == 1.0
        assert kolmogorov_sf(5.0) < 1e-15
        # reference value of the Kolmogorov distribution at 1.0
        assert kolmogorov_sf(1.0) == pytest.approx(0.26999967, abs=1e-6)

    def test_null_case(self):
        rng = np.random.default_rng(1)
        _, p = ks_normal(rng.standard_normal(10**5))
        assert p > 1e-3

    def test_gross_violation(self):
        rng = np.random.default_rng(2)
        _, p = ks_normal(rng.random(10**5))
        assert p < 1e-6

    def test_statistic_simple(self):
        # three points at the quartiles of U(0,1)
        d = ks_statistic([0.25, 0.5, 0.75], lambda v: np.clip(v, 0, 1))
        assert d == pytest.approx(0.25)

    def test_min_samples(self):
        with pytest.raises(ValueError):
            ks_normal(np.zeros(10))

    def test_ks_test_generic_cdf(self):
        rng = np.random.default_rng(3)
        draws = rng.exponential(size=10**4)
        _, p = ks_test(draws, lambda v: -np.expm1(-np.clip(v, 0, None)))
        assert p > 1e-3


class TestChiSquare:
    def test_exact_proportional(self):
        stat, p = chi_square([10, 20, 30], [1 / 6, 2 / 6, 3 / 6])
        assert stat == 0.0 and p == 1.0

    def test_swapped_table_fails(self):
        rng = np.random.default_rng(4)
        draws = rng.choice(3, size=10000, p=[0.2, 0.3, 0.5])
        obs = [int(np.sum(draws == k)) for k in range(3)]
        _, p_ok = chi_square(obs, [0.2, 0.3, 0.5])
        _, p_bad = chi_square(obs, [0.5, 0.3, 0.2])
        assert p_ok > 1e-3 and p_bad < 1e-6

    def test_sf_reference(self):
        # chi-square with 3 dof at x=3: sf ~ 0.3916 (Wilson-Hilferty)
        assert chi_square_sf(3.0, 3) == pytest.approx(0.3916, abs=0.01)

    def test_guards(self):
        with pytest.raises(ValueError):
            chi_square([1, 2], [0.5, 0.5, 0.0])
        with pytest.raises(ValueError):
            chi_square([1, 1, 1], [0.3, 0.3, 0.4])


class TestSlopeRegression:
    def test_exact_line(self):
        slope, intercept, se = slope_regression([(0, 1), (1, 3), (2, 5)])
        assert slope == pytest.approx(2.0)
        assert intercept == pytest.approx(1.0)
        assert se == pytest.approx(0.0, abs=1e-12)

    def test_noisy_slope(self):
        rng = np.random.default_rng(5)
        xs = np.linspace(1.0, 5.0, 20)
        ys = 0.7 * xs + 2.0 + rng.normal(0, 0.01, size=20)
        slope, _, se = slope_regression(list(zip(xs, ys)))
        assert abs(slope - 0.7) < 3 * se + 0.01

    def test_variance_error_normal_reference(self):
        # for normal data Var(s^2) ~ 2 sigma^4 / T
        rng = np.random.default_rng(6)
        draws = 3.0 * rng.standard_normal(10**5)
        est = sample_variance_error(draws)
        assert est == pytest.approx(2 * 81 / 10**5, rel=0.1)
        with pytest.raises(ValueError):
            sample_variance_error([1.0, 2.0, 3.0])

    def test_slope_with_se_propagates_point_noise(self):
        # an exactly linear trend has zero residual stderr, but the
        # propagated stderr must reflect the per-point sampling noise
        pairs = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]
        _, _, resid_se = slope_regression(pairs)
        slope, se = slope_with_se(pairs, [0.04, 0.04, 0.04])
        assert resid_se == pytest.approx(0.0, abs=1e-12)
        assert slope == pytest.approx(2.0)
        # weights are (x - xbar)/Sxx = (-0.5, 0, 0.5)
        assert se == pytest.approx(math.sqrt(0.25 * 0.04 * 2))

    def test_slope_with_se_coverage(self):
        rng = np.random.default_rng(7)
        xs = np.array([1.0, 2.0, 3.0, 4.0])
        hits = 0
        for _ in range(300):
            ys = 2.0 * xs + rng.normal(0, 0.3, size=4)
            slope, se = slope_with_se(list(zip(xs, ys)), [0.09] * 4)
            hits += abs(slope - 2.0) <= 1.96 * se
        assert hits >= 300 * 0.90

    def test_slope_with_se_guards(self):
        with pytest.raises(ValueError):
            slope_with_se([(1.0, 2.0), (2.0, 3.0)], [0.1, 0.1])
        with pytest.raises(ValueError):
            slope_with_se([(0, 1), (1, 2), (2, 3)], [0.1, -0.1, 0.1])

    def test_degenerate_design(self):
        with pytest.raises(ValueError):
            slope_regression([(1.0, 2.0), (1.0, 3.0), (1.0, 4.0)])
        with pytest.raises(ValueError):
            slope_regression([(1.0, 2.0), (2.0, 3.0)])
