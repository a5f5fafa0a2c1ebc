"""Poisson point-process simulators and their hull statistics.

Three samplers share one geometry: the homogeneous unit-square process,
the inhomogeneous process with intensity n * Lebesgue x G on the strip
(0,1) x (0, G^{-1}(1)), and the discrete model with one point (i/n, C_i)
per column. A strip-snapping coupling connects the last two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _fast
from .atoms import AtomDistribution


@dataclass(frozen=True)
class PointSample:
    """Planar points from one simulator draw."""

    kind: str  # homogeneous | inhomogeneous | discrete | coupled
    n: float   # rate (or degree for the discrete model)
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.x)


def sim_homogeneous(n: float, rng: np.random.Generator) -> PointSample:
    """Poisson(n) points i.i.d. uniform on the unit square."""
    if n <= 0:
        raise ValueError("rate n must be positive")
    count = rng.poisson(n)
    return PointSample("homogeneous", n, rng.random(count), rng.random(count))


def sim_inhomogeneous(dist: AtomDistribution, n: float,
                      rng: np.random.Generator,
                      height_mult: float = 1.0) -> PointSample:
    """Intensity n * Lebesgue x G on (0,1) x (0, height_mult * G^{-1}(1)).

    The y-marginal is sampled by pushing uniforms through G^{-1}; the
    default strip carries G-mass exactly 1, so the point count is
    Poisson(n).
    """
    if n <= 0:
        raise ValueError("rate n must be positive")
    if height_mult == 1.0:
        mass = 1.0
    else:
        mass = float(dist.g_of(height_mult * float(dist.g_inverse(1.0))))
    count = rng.poisson(n * mass)
    y = dist.g_inverse(rng.random(count) * mass)
    return PointSample("inhomogeneous", n, rng.random(count), np.asarray(y))


def sim_discrete(dist: AtomDistribution, n: int,
                 rng: np.random.Generator) -> PointSample:
    """Points (i/n, C_i), i = 0..n, with C_i i.i.d. atom draws.

    This is the first-arrival skeleton of a PPP with intensity
    (column measure) x G; its hull combinatorics equal those of the
    points (i, C_i), so face counts match the tropical zero counts.
    """
    if n < 1:
        raise ValueError("degree n must be >= 1")
    x = np.arange(n + 1, dtype=float) / n
    y = np.asarray(dist.sample(rng, n + 1), dtype=float)
    return PointSample("discrete", n, x, y)


def couple(sample: PointSample, n: int) -> PointSample:
    """Snap each x-coordinate to the left edge i/n of its strip.

    Bijective on points; y-coordinates are unchanged and x moves by at
    most 1/n. Points exactly on a strip edge keep their own strip.
    """
    snapped = np.floor(sample.x * n) / n
    return PointSample("coupled", sample.n, snapped, sample.y.copy())


def _sorted_unique_min_y(x: np.ndarray, y: np.ndarray):
    """Sort by x and keep the minimum-y point per duplicated x."""
    order = np.argsort(x, kind="quicksort")
    xs = x[order]
    if len(xs) > 1 and np.any(xs[1:] == xs[:-1]):
        # duplicated x (e.g. coupled samples): lexsort so the keep-mask
        # below retains the minimum y of each tie group
        order = np.lexsort((y, x))
        xs = x[order]
        ys = y[order]
        keep = np.empty(len(xs), dtype=bool)
        keep[0] = True
        np.not_equal(xs[1:], xs[:-1], out=keep[1:])
        xs = xs[keep]
        ys = ys[keep]
    else:
        ys = y[order]
    return np.ascontiguousarray(xs), np.ascontiguousarray(ys)


def hull_count(sample: PointSample, side: str = "full") -> int:
    """Lower-hull face count of a sample: full, plus (left) or minus (right)."""
    if side not in ("full", "plus", "minus"):
        raise ValueError(f"unknown side {side!r}")
    if len(sample) < 2:
        return 0
    xs, ys = _sorted_unique_min_y(np.asarray(sample.x, dtype=float),
                                  np.asarray(sample.y, dtype=float))
    total, plus, minus = _fast.lower_hull_counts(xs, ys)
    return {"full": total, "plus": plus, "minus": minus}[side]


def hull_vertices(sample: PointSample):
    """(x, y) arrays of the strict lower-hull vertices of a sample."""
    xs, ys = _sorted_unique_min_y(np.asarray(sample.x, dtype=float),
                                  np.asarray(sample.y, dtype=float))
    idx = _fast.lower_hull_indices(xs, ys)
    return xs[idx], ys[idx]
