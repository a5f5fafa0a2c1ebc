"""Jump-ratio laws of the hull vertex chain, and renewal counting.

The heights of the lower-left hull vertices of the Poisson model form a
multiplicative chain: given the current height s, the next height is
s * B with B distributed according to the state-dependent law

    I_s(b) = [(1 - b) G([0, s b]) + int_0^b G([0, s t]) dt] / int_0^1 G([0, s t]) dt.

As s -> 0, I_s converges to I_0 = Beta(a, 2) (density ~ b^(a-1) (1-b)).
Taking logs turns the chain into a state-dependent walk whose jump count
on [0, log(n)/a] matches the hull face count up to a tight error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, optimize

from .atoms import AtomDistribution, Exponential


@dataclass(frozen=True)
class RenewalConstants:
    """Step moments and CLT coefficients for the Beta(a,2) walk.

    `var_coeff_paper` and `var_coeff_renewal` are the two candidate
    variance-per-log(n) constants; they coincide at a = 1 (20/27) and
    differ otherwise, so both are reported and Monte Carlo adjudicates.
    """

    a: float
    mu: float
    sigma2: float
    mean_coeff: float
    var_coeff_paper: float
    var_coeff_renewal: float


def constants(a: float) -> RenewalConstants:
    if a <= 0:
        raise ValueError("tail exponent a must be positive")
    mu = 1.0 / a + 1.0 / (a + 1.0)
    sigma2 = 1.0 / a**2 + 1.0 / (a + 1.0) ** 2
    mean_coeff = (2.0 * a + 2.0) / (2.0 * a + 1.0)
    var_paper = 2.0 * a * (a + 1.0) * (2.0 * a**2 + 2.0 * a + 1.0) / (2.0 * a + 1.0) ** 3
    var_renewal = 2.0 * sigma2 / (mu**3 * a)
    return RenewalConstants(
        a=a,
        mu=mu,
        sigma2=sigma2,
        mean_coeff=mean_coeff,
        var_coeff_paper=var_paper,
        var_coeff_renewal=var_renewal,
    )


def i0_cdf(a: float, b):
    """CDF of the limit law Beta(a, 2): (a+1) b^a - a b^(a+1)."""
    b = np.clip(np.asarray(b, dtype=float), 0.0, 1.0)
    return (a + 1.0) * b**a - a * b ** (a + 1.0)


def i0_quantile(a: float, u):
    """Inverse of i0_cdf, bracketed bisection to ~1e-15."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u >= 1)):
        raise ValueError("probability must lie in [0, 1)")
    if a == 1.0:
        return 1.0 - np.sqrt(1.0 - u)  # 2b - b^2 inverted
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        f = (a + 1.0) * mid**a - a * mid ** (a + 1.0)
        lo = np.where(f < u, mid, lo)
        hi = np.where(f < u, hi, mid)
    return 0.5 * (lo + hi)


def _has_closed_g_integral(dist: AtomDistribution) -> bool:
    return type(dist).g_integral is not AtomDistribution.g_integral


@lru_cache(maxsize=None)
def _gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w  # on [0, 1]


def _int_g(dist: AtomDistribution, s: float, b: float, accurate: bool = False) -> float:
    """int_0^b G([0, s t]) dt."""
    if b <= 0.0:
        return 0.0
    if _has_closed_g_integral(dist):
        return dist.g_integral(s * b) / s
    if accurate:
        val, _ = integrate.quad(lambda t: float(dist.g_of(s * t)), 0.0, b,
                                epsabs=1e-12, epsrel=1e-12, limit=200)
        return val
    a = dist.tail_a
    nodes, weights = _gl_nodes(96)
    if a >= 1.0:
        t = b * nodes
        return b * float(np.sum(weights * dist.g_of(s * t)))
    # substitution t = tau^(1/a) absorbs the t^a behaviour at 0
    upper = b**a
    tau = upper * nodes
    t = tau ** (1.0 / a)
    jac = (1.0 / a) * tau ** (1.0 / a - 1.0)
    return upper * float(np.sum(weights * dist.g_of(s * t) * jac))


def i_s_cdf(dist: AtomDistribution, s: float, b, accurate: bool = True):
    """CDF of the jump ratio at state s (s > 0); quadrature to ~1e-10."""
    if s <= 0.0:
        raise ValueError("state s must be positive; use i0_cdf for the limit")
    b_arr = np.atleast_1d(np.asarray(b, dtype=float))
    if np.any((b_arr < 0) | (b_arr > 1)):
        raise ValueError("ratio b must lie in [0, 1]")
    denom = _int_g(dist, s, 1.0, accurate=accurate)
    out = np.empty_like(b_arr)
    for i, bi in enumerate(b_arr):
        num = (1.0 - bi) * float(dist.g_of(s * bi)) + _int_g(dist, s, bi,
                                                             accurate=accurate)
        out[i] = num / denom
    return out if np.ndim(b) else float(out[0])


def i_s_sample(dist: AtomDistribution, s: float, rng: np.random.Generator,
               size=None):
    """Inverse-CDF draw(s) from I_s (s > 0) or from the limit I_0 (s = 0)."""
    if s == 0.0:
        return i0_quantile(dist.tail_a, rng.random(size))
    if isinstance(dist, Exponential):
        # G is linear, so all s-dependence cancels: I_s(b) = 2b - b^2
        return 1.0 - np.sqrt(1.0 - rng.random(size))
    u = np.atleast_1d(rng.random(size))
    denom = _int_g(dist, s, 1.0)

    def cdf(b, target):
        num = (1.0 - b) * float(dist.g_of(s * b)) + _int_g(dist, s, b)
        return num / denom - target

    out = np.array([optimize.brentq(cdf, 0.0, 1.0, args=(ui,), xtol=1e-12)
                    for ui in u])
    return out if size is not None else float(out[0])


def walk_count(dist: AtomDistribution, s0: float, t: float,
               rng: np.random.Generator) -> int:
    """Jump count of the state-dependent walk within horizon t.

    The walk starts at S_0 = -log(s0) and steps by -log(B) with
    B ~ I_(current height); counts indices i >= 0 with S_i <= t.
    """
    if s0 <= 0.0:
        raise ValueError("initial height must be positive")
    level = -math.log(s0)
    count = 0
    while level <= t:
        count += 1
        b = float(i_s_sample(dist, math.exp(-level), rng))
        level -= math.log(b)
    return count


def renewal_count(a: float, t: float, delay: float,
                  rng: np.random.Generator) -> int:
    """Renewal count on [0, t] for i.i.d. -log(Beta(a,2)) inter-arrivals.

    Arrivals sit at delay + S_k, k >= 1 (the delay epoch itself is not
    an arrival); the count is the number of arrivals <= t.
    """
    if t < 0 or delay < 0:
        raise ValueError("horizon and delay must be nonnegative")
    if delay > t:
        return 0
    cons = constants(a)
    count = 0
    level = delay
    block = max(8, int((t - delay) / cons.mu * 1.2 + 8 * math.sqrt(cons.sigma2 * max(t, 1.0)) / cons.mu))
    while level <= t:
        steps = -np.log(i0_quantile(a, rng.random(block)))
        arrivals = level + np.cumsum(steps)
        count += int(np.count_nonzero(arrivals <= t))
        level = float(arrivals[-1])
    return count
