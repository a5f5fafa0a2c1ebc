import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from tropstat.atoms import (
    DiscreteUniform,
    Exponential,
    Gamma,
    GMeasure,
    Uniform01,
    Weibull,
    parse_dist,
)

CONTINUOUS = [Exponential(), Uniform01(), Gamma(0.5), Gamma(2.0), Weibull(2.0),
              Weibull(0.7)]


class TestCdfQuantile:
    @pytest.mark.parametrize("dist", CONTINUOUS, ids=lambda d: d.name)
    def test_roundtrip(self, dist):
        u = np.linspace(0.001, 0.999, 57)
        assert np.allclose(dist.cdf(dist.quantile(u)), u, atol=1e-9)

    @pytest.mark.parametrize("dist", CONTINUOUS, ids=lambda d: d.name)
    def test_cdf_monotone_and_bounded(self, dist):
        y = np.linspace(0.0, 3.0, 301)
        f = np.asarray(dist.cdf(y))
        assert np.all(np.diff(f) >= 0)
        assert np.all((f >= 0) & (f <= 1))

    @pytest.mark.parametrize("dist", CONTINUOUS, ids=lambda d: d.name)
    def test_tail_behaviour(self, dist):
        # F(y) ~ tail_c * y^tail_a as y -> 0
        y = 1e-6
        assert float(dist.cdf(y)) == pytest.approx(
            dist.tail_c * y**dist.tail_a, rel=1e-3)

    def test_bad_probability_rejected(self):
        with pytest.raises(ValueError):
            Exponential().quantile(1.0)
        with pytest.raises(ValueError):
            Exponential().quantile(-0.1)

    def test_exponential_closed_forms(self):
        d = Exponential()
        assert float(d.cdf(math.log(2))) == pytest.approx(0.5)
        assert float(d.quantile(0.5)) == pytest.approx(math.log(2))

    def test_pdf_integrates_to_cdf(self):
        for dist in (Exponential(), Gamma(2.0), Weibull(2.0)):
            val, _ = integrate.quad(lambda y: float(dist.pdf(y)), 0.0, 1.5)
            assert val == pytest.approx(float(dist.cdf(1.5)), abs=1e-8)


class TestGMeasure:
    @pytest.mark.parametrize("dist", CONTINUOUS, ids=lambda d: d.name)
    def test_g_inverse_roundtrip(self, dist):
        m = np.linspace(0.01, 2.0, 41)
        assert np.allclose(dist.g_of(dist.g_inverse(m)), m, atol=1e-8)

    def test_exponential_g_identity(self):
        d = Exponential()
        x = np.linspace(0.0, 5.0, 11)
        assert np.allclose(d.g_of(x), x)
        assert np.allclose(d.g_inverse(x), x)

    def test_weibull_g_power(self):
        d = Weibull(3.0)
        assert float(d.g_of(0.5)) == pytest.approx(0.125)
        assert float(d.g_inverse(0.125)) == pytest.approx(0.5)

    def test_uniform_g_log(self):
        d = Uniform01()
        assert float(d.g_of(0.5)) == pytest.approx(math.log(2))
        with pytest.raises(ValueError):
            d.g_of(1.0)

    @pytest.mark.parametrize("dist,h", [(Exponential(), 1.7), (Uniform01(), 0.8),
                                        (Weibull(2.0), 1.3), (Weibull(0.7), 0.9)])
    def test_closed_g_integral_matches_quadrature(self, dist, h):
        val, _ = integrate.quad(lambda y: float(dist.g_of(y)), 0.0, h,
                                epsabs=1e-12)
        assert dist.g_integral(h) == pytest.approx(val, abs=1e-9)

    def test_gamma_g_integral_numeric(self):
        d = Gamma(2.0)
        val, _ = integrate.quad(lambda y: float(d.g_of(y)), 0.0, 1.0)
        assert d.g_integral(1.0) == pytest.approx(val, abs=1e-9)

    def test_wrapper_delegates(self):
        g = GMeasure(Exponential())
        assert float(g.mass(0.7)) == pytest.approx(0.7)
        assert float(g.inverse(0.7)) == pytest.approx(0.7)
        assert g.integral(2.0) == pytest.approx(2.0)

    def test_first_arrival_law(self):
        # first arrival of a PPP with intensity G has law F
        d = Gamma(2.0)
        rng = np.random.default_rng(8)
        first = d.g_inverse(rng.exponential(size=200000))
        y = np.linspace(0.1, 4.0, 14)
        emp = (first[:, None] <= y).mean(axis=0)
        assert np.allclose(emp, d.cdf(y), atol=0.01)


class TestSampling:
    @pytest.mark.parametrize("dist", [Exponential(), Gamma(2.0)],
                             ids=lambda d: d.name)
    def test_generator_override_matches_law(self, dist):
        rng = np.random.default_rng(21)
        draws = np.asarray(dist.sample(rng, 200000))
        y = np.linspace(0.1, 4.0, 14)
        emp = (draws[:, None] <= y).mean(axis=0)
        assert np.allclose(emp, dist.cdf(y), atol=0.01)

    def test_inverse_cdf_default_deterministic(self):
        d = Weibull(2.0)
        a = d.sample(np.random.default_rng(5), 10)
        b = d.quantile(np.random.default_rng(5).random(10))
        assert np.allclose(a, b)


class TestDiscreteUniform:
    def test_support(self):
        d = DiscreteUniform(5)
        rng = np.random.default_rng(2)
        draws = np.asarray(d.sample(rng, 1000))
        assert set(draws.tolist()) <= {1.0, 2.0, 3.0, 4.0, 5.0}
        assert not d.continuous

    def test_cdf_steps(self):
        d = DiscreteUniform(4)
        assert float(d.cdf(2.5)) == pytest.approx(0.5)
        assert float(d.cdf(0.5)) == 0.0
        assert float(d.cdf(9.0)) == 1.0


class TestParseDist:
    def test_known_specs(self):
        assert isinstance(parse_dist("exp"), Exponential)
        assert isinstance(parse_dist("unif"), Uniform01)
        assert parse_dist("gamma:2").a == 2.0
        assert parse_dist("weibull:0.5").k == 0.5
        assert parse_dist("discrete:7").k == 7

    @pytest.mark.parametrize("bad", ["nope", "gamma", "weibull", "discrete",
                                     "gamma:x"])
    def test_bad_specs(self, bad):
        with pytest.raises(ValueError):
            parse_dist(bad)
