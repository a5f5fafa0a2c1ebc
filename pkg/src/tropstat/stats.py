"""Statistical verification kit for the Monte Carlo experiments.

Self-contained standardization, goodness-of-fit tests and log-n slope
regression. The p-value approximations (truncated Kolmogorov series,
Wilson-Hilferty chi-square tail) are accurate far beyond the p > 1e-3
pass thresholds the acceptance suite uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .renewal import constants


@dataclass(frozen=True)
class TrialSummary:
    """Per-experiment aggregate of sampled counts."""

    n: float
    a: float
    trials: int
    mean: float
    variance: float
    stderr: float
    seed: int | None = None

    @staticmethod
    def from_counts(counts, n, a, seed=None) -> "TrialSummary":
        counts = np.asarray(counts, dtype=float)
        var = float(counts.var(ddof=1)) if len(counts) > 1 else 0.0
        return TrialSummary(
            n=n, a=a, trials=len(counts),
            mean=float(counts.mean()),
            variance=var,
            stderr=math.sqrt(var / len(counts)),
            seed=seed,
        )


def standardize(counts, n: float, a: float, var_choice: str = "paper"):
    """Center by mean_coeff*log(n), scale by sqrt(var_coeff*log(n))."""
    if n < 3:
        raise ValueError("n must be >= 3 so log(n) exceeds 1")
    cons = constants(a)
    if var_choice == "paper":
        var_coeff = cons.var_coeff_paper
    elif var_choice == "renewal":
        var_coeff = cons.var_coeff_renewal
    else:
        raise ValueError(f"unknown var_choice {var_choice!r}")
    logn = math.log(n)
    counts = np.asarray(counts, dtype=float)
    return (counts - cons.mean_coeff * logn) / math.sqrt(var_coeff * logn)


def _std_normal_cdf(z):
    return 0.5 * (1.0 + np.vectorize(math.erf)(np.asarray(z) / math.sqrt(2.0)))


def kolmogorov_sf(x: float, terms: int = 100) -> float:
    """Tail of the Kolmogorov distribution: 2 sum (-1)^(k-1) e^(-2 k^2 x^2)."""
    if x <= 0:
        return 1.0
    total = 0.0
    for k in range(1, terms + 1):
        term = math.exp(-2.0 * k * k * x * x)
        total += term if k % 2 == 1 else -term
        if term < 1e-18:
            break
    return min(1.0, max(0.0, 2.0 * total))


def ks_statistic(samples, cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance against a given CDF."""
    z = np.sort(np.asarray(samples, dtype=float))
    m = len(z)
    f = np.asarray(cdf(z), dtype=float)
    grid = np.arange(m + 1) / m
    return float(max(np.max(grid[1:] - f), np.max(f - grid[:-1])))


def ks_normal(zs) -> tuple[float, float]:
    """(statistic, approximate p) of a one-sample KS test vs N(0, 1)."""
    zs = np.asarray(zs, dtype=float)
    if len(zs) < 50:
        raise ValueError("need at least 50 samples")
    d = ks_statistic(zs, _std_normal_cdf)
    return d, kolmogorov_sf(math.sqrt(len(zs)) * d)


def ks_lattice_normal(counts, mu: float, sd: float) -> float:
    """KS distance of integer-valued counts to N(mu, sd^2).

    Uses the midpoint continuity correction (ECDF at k against the
    normal CDF at k + 1/2): the raw KS of lattice data against a
    continuous CDF is floored at half the largest pmf value, which
    measures discretization, not lack of normality.
    """
    counts = np.asarray(counts)
    if not np.all(counts == np.round(counts)):
        raise ValueError("counts must be integers")
    if len(counts) < 50:
        raise ValueError("need at least 50 samples")
    ks = np.arange(counts.min(), counts.max() + 1)
    ecdf = (counts[:, None] <= ks).mean(axis=0)
    ref = _std_normal_cdf((ks + 0.5 - mu) / sd)
    return float(np.max(np.abs(ecdf - ref)))


def ks_test(samples, cdf) -> tuple[float, float]:
    """(statistic, approximate p) against an arbitrary continuous CDF."""
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 50:
        raise ValueError("need at least 50 samples")
    d = ks_statistic(samples, cdf)
    return d, kolmogorov_sf(math.sqrt(len(samples)) * d)


def chi_square_sf(x: float, dof: int) -> float:
    """Wilson-Hilferty upper tail of the chi-square distribution."""
    if x <= 0:
        return 1.0
    z = ((x / dof) ** (1.0 / 3.0) - (1.0 - 2.0 / (9.0 * dof))) / math.sqrt(2.0 / (9.0 * dof))
    return float(1.0 - _std_normal_cdf(z))


def chi_square(observed: Sequence[float], expected_probs: Sequence[float]):
    """Pearson statistic and p-value with k-1 degrees of freedom."""
    obs = np.asarray(observed, dtype=float)
    probs = np.asarray(expected_probs, dtype=float)
    if obs.shape != probs.shape:
        raise ValueError("observed and expected categories differ")
    if np.any(probs <= 0):
        raise ValueError("expected probabilities must be positive")
    total = obs.sum()
    if total / len(obs) < 5:
        raise ValueError("need an average of >= 5 observations per category")
    expected = total * probs / probs.sum()
    stat = float(np.sum((obs - expected) ** 2 / expected))
    return stat, chi_square_sf(stat, len(obs) - 1)


def sample_variance_error(values) -> float:
    """Sampling variance of the unbiased sample variance of `values`."""
    values = np.asarray(values, dtype=float)
    t = len(values)
    if t < 4:
        raise ValueError("need at least 4 samples")
    d = values - values.mean()
    m4 = float(np.mean(d**4))
    s2 = float(values.var(ddof=1))
    return max(0.0, (m4 - (t - 3) / (t - 1) * s2 * s2) / t)


def slope_with_se(pairs: Sequence[tuple[float, float]],
                  point_vars: Sequence[float]):
    """OLS slope and a stderr propagated from per-point sampling variances.

    Use when the ordinates are themselves Monte Carlo estimates: the
    residual-based stderr of `slope_regression` only measures deviation
    from linearity, which is near zero for an exactly linear trend no
    matter how noisy each estimate is.
    """
    pts = np.asarray(pairs, dtype=float)
    pv = np.asarray(point_vars, dtype=float)
    if len(pts) < 3 or len(np.unique(pts[:, 0])) < 2:
        raise ValueError("need >= 3 pairs with distinct abscissae")
    if pv.shape != (len(pts),) or np.any(pv < 0):
        raise ValueError("need one nonnegative variance per point")
    x = pts[:, 0]
    xbar = x.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    w = (x - xbar) / sxx
    slope = float(np.sum(w * pts[:, 1]))
    return slope, math.sqrt(float(np.sum(w * w * pv)))


def slope_regression(pairs: Sequence[tuple[float, float]]):
    """Least-squares (slope, intercept, slope stderr) on (log n, statistic)."""
    pts = np.asarray(pairs, dtype=float)
    if len(pts) < 3 or len(np.unique(pts[:, 0])) < 2:
        raise ValueError("need >= 3 pairs with distinct abscissae")
    x = pts[:, 0]
    y = pts[:, 1]
    xbar = x.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    slope = float(np.sum((x - xbar) * (y - y.mean())) / sxx)
    intercept = float(y.mean() - slope * xbar)
    resid = y - (intercept + slope * x)
    if len(pts) > 2:
        s2 = float(np.sum(resid**2) / (len(pts) - 2))
    else:
        s2 = 0.0
    return slope, intercept, math.sqrt(s2 / sxx)
