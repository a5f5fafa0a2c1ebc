"""Exact laws and samplers for the discrete Beta(2,1) stick-breaking partition.

The composition law p_n, its component-count recursion, the Polya urn
pmf, the sequential restaurant-process sampler, continuous
stick-breaking, the moment formula for p_n, and the stick-conditional
(Bernoulli sieve) sampler. Exact laws are computed in rational
arithmetic so the acceptance tests have no float drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .hull import OrderedPartition


def compositions(n: int) -> Iterator[tuple]:
    """All 2^(n-1) compositions of n, lexicographic by first part."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def _validate_composition(n: int, comp: Sequence[int]):
    parts = tuple(comp)
    if not parts or any((not isinstance(p, (int, np.integer))) or p < 1 for p in parts):
        raise ValueError("composition parts must be positive integers")
    if sum(parts) != n:
        raise ValueError(f"composition must sum to {n}")
    return parts


def exact_pn(n: int, comp: Sequence[int]) -> Fraction:
    """Probability of the composition (x_1..x_m): prod x_i / C(n - s_i + 1, 2)."""
    parts = _validate_composition(n, comp)
    prob = Fraction(1)
    s = 0
    for x in parts:
        prob *= Fraction(int(x), math.comb(n - s + 1, 2))
        s += x
    return prob


@lru_cache(maxsize=None)
def exact_pkn(n: int, k: int) -> Fraction:
    """Probability that the partition of n has k components (recursion)."""
    if n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    if k < 1 or k > n:
        raise ValueError("need 1 <= k <= n")
    total = Fraction(0)
    for j in range(k - 1, n):
        total += (n - j) * _pkn_or_zero(j, k - 1)
    return total / math.comb(n + 1, 2)


def _pkn_or_zero(n: int, k: int) -> Fraction:
    if n == 0:
        return Fraction(1) if k == 0 else Fraction(0)
    if k < 1 or k > n:
        return Fraction(0)
    return exact_pkn(n, k)


def polya_pmf(w: int, b: int, n: int, x: int) -> Fraction:
    """P(W_n = x) for the (w white, b black) Polya urn after n additions."""
    if w < 1 or b < 1:
        raise ValueError("need at least one ball of each color")
    if not 0 <= x <= n:
        return Fraction(0)
    num = (
        math.comb(n, x)
        * math.factorial(w + x - 1)
        * math.factorial(b + n - x - 1)
        * math.factorial(w + b - 1)
    )
    den = (
        math.factorial(w - 1)
        * math.factorial(b - 1)
        * math.factorial(w + b + n - 1)
    )
    return Fraction(num, den)


def crp_sample(n: int, rng: np.random.Generator) -> OrderedPartition:
    """One partition of n from the sequential restaurant sampler.

    Customer n+1 joins table 1 with probability (x_1+1)/(n+2); failing
    that, joins table i with conditional probability (x_i+1)/(n-s_i+2)
    where s_i counts the customers at earlier tables; else opens a new
    table.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = [1]
    for seated in range(1, n):
        s = 0
        placed = False
        for i, x in enumerate(counts):
            if rng.random() < (x + 1) / (seated - s + 2):
                counts[i] += 1
                placed = True
                break
            s += x
        if not placed:
            counts.append(1)
    return OrderedPartition(tuple(counts))


@dataclass(frozen=True)
class StickSequence:
    """Prefix of a stick-breaking sequence: P_i = B_i * prod_{j<i} (1 - B_j)."""

    fractions: tuple  # the B_i
    sticks: tuple     # the P_i

    @property
    def residual(self):
        return 1.0 - sum(self.sticks)


def beta_2a_quantile(u, a: float = 1.0):
    """Quantile of Beta(2, a): cdf F(x) = 1 - (1-x)^a (1 + a x)."""
    u = np.asarray(u, dtype=float)
    if a == 1.0:
        return np.sqrt(u)
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        f = 1.0 - (1.0 - mid) ** a * (1.0 + a * mid)
        lo = np.where(f < u, mid, lo)
        hi = np.where(f < u, hi, mid)
    return 0.5 * (lo + hi)


def stick_sample(m: int, rng: np.random.Generator, a: float = 1.0) -> StickSequence:
    """First m sticks of Beta(2, a) stick-breaking (a=1 is Beta(2,1))."""
    if m < 1:
        raise ValueError("prefix length must be >= 1")
    b = beta_2a_quantile(rng.random(m), a=a)
    sticks = b * np.cumprod(np.concatenate(([1.0], 1.0 - b[:-1])))
    return StickSequence(fractions=tuple(b.tolist()), sticks=tuple(sticks.tolist()))


def eppf(comp: Sequence[int], trials: int, rng: np.random.Generator,
         a: float = 1.0):
    """Monte Carlo estimate of the composition probability via stick moments.

    The per-set-partition moment E[prod_i P_i^(x_i - 1) *
    prod_{i<m} (1 - sum_{j<=i} P_j)] is scaled by the number of
    appearance-ordered set partitions with these block sizes,
    prod_i C(n - s_{i-1} - 1, x_i - 1), giving the same law as exact_pn.
    Returns (estimate, standard error).
    """
    parts = _validate_composition(sum(comp), comp)
    m = len(parts)
    arrangements = 1
    s = 0
    for x in parts:
        arrangements *= math.comb(sum(parts) - s - 1, x - 1)
        s += x
    b = beta_2a_quantile(rng.random((trials, m)), a=a)
    lead = np.cumprod(np.concatenate(
        (np.ones((trials, 1)), 1.0 - b[:, :-1]), axis=1), axis=1)
    sticks = b * lead
    vals = np.prod(sticks ** (np.asarray(parts) - 1.0), axis=1)
    if m > 1:
        residuals = 1.0 - np.cumsum(sticks, axis=1)
        vals *= np.prod(residuals[:, : m - 1], axis=1)
    vals *= arrangements
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(trials))
    return est, se


def sieve_sample(n: int, rng: np.random.Generator, a: float = 1.0,
                 sticks: Sequence[float] | None = None) -> OrderedPartition:
    """Partition of n from the stick-conditional restaurant process.

    Draws a stick sequence (extended on demand), then seats each
    customer at table i with probability P_i, or at a new table with
    the residual probability. With explicit `sticks` the given P_i are
    used verbatim.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p: list[float] = []       # sticks for discovered-or-next tables
    residual = 1.0
    counts: list[int] = []

    def extend():
        nonlocal residual
        if sticks is not None:
            if len(p) >= len(sticks) or residual <= 0.0:
                p.append(0.0)
                return
            b = min(sticks[len(p)] / residual, 1.0)
        else:
            b = float(beta_2a_quantile(rng.random(), a=a))
        p.append(residual * b)
        residual *= 1.0 - b

    extend()
    for _ in range(n):
        u = rng.random()
        acc = 0.0
        placed = False
        for i in range(len(counts)):
            acc += p[i]
            if u < acc:
                counts[i] += 1
                placed = True
                break
        if not placed:
            counts.append(1)
            extend()
    return OrderedPartition(tuple(counts))
