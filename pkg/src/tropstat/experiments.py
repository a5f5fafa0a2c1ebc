"""Seeded, trial-parallel Monte Carlo experiments.

Every experiment farms independent trials; trial k draws its generator
from derive_seed(master_seed, tag, k), and results are aggregated in
trial order, so output is identical across thread counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import _fast, ppp
from .atoms import AtomDistribution
from .hull import LowerHull, triangle_areas
from .renewal import constants, walk_count
from .seeding import trial_rng
from .stats import (
    TrialSummary,
    ks_normal,
    sample_variance_error,
    slope_regression,
    slope_with_se,
    standardize,
)


def farm_trials(tag: str, seed: int, trials: int, fn: Callable,
                threads: int = 1) -> list:
    """Run fn(trial_rng) per trial; results come back in trial order."""

    def run(k: int):
        return fn(trial_rng(seed, tag, k))

    if threads <= 1:
        return [run(k) for k in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, range(trials)))


def sample_zn_counts(dist: AtomDistribution, n: int, trials: int, seed: int,
                     threads: int = 1) -> np.ndarray:
    """Zero counts of `trials` random degree-n polynomials."""

    def one(rng):
        y = np.asarray(dist.sample(rng, n + 1), dtype=float)
        return int(_fast.zn_count(y))

    tag = f"sample-zn:{dist.name}:{n}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=np.int64)


def renewal_trials(a: float, t: float, trials: int, seed: int,
                   delay: float = 0.0, threads: int = 1) -> np.ndarray:
    """Renewal counts on [0, t] with a fixed delay."""
    from .renewal import renewal_count

    def one(rng):
        return renewal_count(a, t, delay, rng)

    tag = f"renewal:{a:g}:{t:g}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=np.int64)


def _simulate(kind: str, dist, n, rng) -> ppp.PointSample:
    if kind == "homog":
        return ppp.sim_homogeneous(n, rng)
    if kind == "inhomog":
        return ppp.sim_inhomogeneous(dist, n, rng)
    if kind == "discrete":
        return ppp.sim_discrete(dist, int(n), rng)
    raise ValueError(f"unknown point-process kind {kind!r}")


def ppp_counts(kind: str, dist, n, trials: int, seed: int,
               side: str = "full", threads: int = 1) -> np.ndarray:
    """Lower-hull face counts of repeated point-process draws."""

    def one(rng):
        return ppp.hull_count(_simulate(kind, dist, n, rng), side=side)

    tag = f"ppp:{kind}:{getattr(dist, 'name', 'none')}:{n}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=np.int64)


def ppp_points(kind: str, dist, n, trials: int, seed: int,
               threads: int = 1) -> list[ppp.PointSample]:
    def one(rng):
        return _simulate(kind, dist, n, rng)

    tag = f"ppp:{kind}:{getattr(dist, 'name', 'none')}:{n}"
    return farm_trials(tag, seed, trials, one, threads)


def couple_diffs(dist, n: int, trials: int, seed: int,
                 threads: int = 1) -> np.ndarray:
    """Per-trial (plus-count before, plus-count after) strip snapping."""

    def one(rng):
        sample = ppp.sim_inhomogeneous(dist, n, rng)
        before = ppp.hull_count(sample, side="plus")
        after = ppp.hull_count(ppp.couple(sample, n), side="plus")
        return (before, after)

    tag = f"couple:{dist.name}:{n}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=np.int64)


def walk_vs_hull(dist, n: int, trials: int, seed: int,
                 threads: int = 1) -> np.ndarray:
    """Per-trial (plus-side hull count, renewal-walk count at log(n)/a)."""
    a = dist.tail_a
    horizon = math.log(n) / a

    def one(rng):
        sample = ppp.sim_inhomogeneous(dist, n, rng)
        hull_side = ppp.hull_count(sample, side="plus")
        s0 = float(dist.g_inverse(rng.random()))
        walk = walk_count(dist, s0, horizon, rng)
        return (hull_side, walk)

    tag = f"walk-vs-hull:{dist.name}:{n}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=np.int64)


def _plus_hull_of(sample: ppp.PointSample) -> LowerHull:
    vx, vy = ppp.hull_vertices(sample)
    k = int(np.argmin(vy))
    verts = tuple(zip(vx[: k + 1].tolist(), vy[: k + 1].tolist()))
    return LowerHull(vertices=verts)


def an_stats(dist, n: int, trials: int, seed: int,
             threads: int = 1) -> np.ndarray:
    """Triangle-area sums (scaled by n) under the lower-left hull."""

    def one(rng):
        sample = ppp.sim_inhomogeneous(dist, n, rng)
        plus = _plus_hull_of(sample)
        if plus.face_count() < 1:
            return 0.0
        return float(n * triangle_areas(plus, dist, x_max=1.0).sum())

    tag = f"an-stat:{dist.name}:{n}"
    return np.array(farm_trials(tag, seed, trials, one, threads), dtype=float)


def triangle_area_samples(dist, n: int, trials: int, seed: int,
                          threads: int = 1, apex_cut: float = 0.0) -> np.ndarray:
    """Pooled individual triangle areas (lambda x G units) over trials.

    ``apex_cut`` drops triangles whose apex vertex has G-height below
    apex_cut / n. The limiting exponential law holds for triangles away
    from the strip's right edge; near the minimum vertex the supporting
    line runs off the strip and the jump areas are censored. Since the
    areas are independent of the vertex positions, filtering on the
    apex height does not bias the law.
    """

    def one(rng):
        sample = ppp.sim_inhomogeneous(dist, n, rng)
        plus = _plus_hull_of(sample)
        if plus.face_count() < 1:
            return np.empty(0)
        areas = triangle_areas(plus, dist, x_max=1.0)
        if apex_cut > 0.0:
            apex_g = np.array([float(dist.g_of(v[1]))
                               for v in plus.vertices[:-1]])
            areas = areas[apex_g * n > apex_cut]
        return areas

    tag = f"tri-areas:{dist.name}:{n}"
    parts = farm_trials(tag, seed, trials, one, threads)
    return np.concatenate(parts) if parts else np.empty(0)


def clt_report(dist, a: float, n_grid: Sequence[int], trials: int, seed: int,
               threads: int = 1) -> dict:
    """Full central-limit verification report over an n-grid.

    Per n: mean/variance summaries of the zero counts; then slope
    regressions against log(n), KS statistics of the standardized
    counts at the largest n under both variance-constant candidates,
    and a verdict flagging the closer candidate.
    """
    cons = constants(a)
    summaries = []
    per_n_counts = {}
    for n in n_grid:
        counts = sample_zn_counts(dist, int(n), trials, seed, threads)
        per_n_counts[int(n)] = counts
        summaries.append(TrialSummary.from_counts(counts, n=n, a=a, seed=seed))

    log_ns = [math.log(s.n) for s in summaries]
    mean_pairs = list(zip(log_ns, [s.mean for s in summaries]))
    var_pairs = list(zip(log_ns, [s.variance for s in summaries]))
    _, mean_icpt, _ = slope_regression(mean_pairs)
    _, var_icpt, _ = slope_regression(var_pairs)
    # stderrs propagate the Monte Carlo error of each per-n estimate;
    # the residual-based stderr would only measure nonlinearity
    mean_slope, mean_se = slope_with_se(
        mean_pairs, [s.stderr**2 for s in summaries])
    var_slope, var_se = slope_with_se(
        var_pairs, [sample_variance_error(per_n_counts[int(s.n)])
                    for s in summaries])

    n_max = int(max(n_grid))
    ks = {}
    for choice in ("paper", "renewal"):
        zs = standardize(per_n_counts[n_max], n_max, a, var_choice=choice)
        stat, p = ks_normal(zs)
        ks[choice] = {"statistic": stat, "p": p}

    candidates = {
        "paper": cons.var_coeff_paper,
        "renewal": cons.var_coeff_renewal,
    }
    within = {name: abs(var_slope - coeff) <= 3.0 * var_se
              for name, coeff in candidates.items()}
    closer = min(candidates, key=lambda name: abs(var_slope - candidates[name]))

    return {
        "dist": dist.name,
        "a": a,
        "trials": trials,
        "seed": seed,
        "per_n": [
            {"n": s.n, "mean": s.mean, "variance": s.variance,
             "stderr": s.stderr, "trials": s.trials}
            for s in summaries
        ],
        "mean_slope": {"value": mean_slope, "intercept": mean_icpt,
                       "stderr": mean_se, "expected": cons.mean_coeff},
        "var_slope": {"value": var_slope, "intercept": var_icpt,
                      "stderr": var_se,
                      "candidates": candidates,
                      "within_3se": within,
                      "closer": closer},
        "ks_at_n_max": {"n": n_max, **ks},
    }
