"""Lower convex hulls of planar point sets.

The exact path below works with whatever number types the caller passes
(ints and Fractions stay exact; floats use double-precision cross
products with zero tie tolerance). The Monte Carlo harness uses the
numba kernels in `_fast` instead; `tests` assert the two agree.

A hull splits at its minimum-y vertex into the lower-left part (faces
descending toward the minimum, support vectors (1, alpha) with
alpha > 0) and the lower-right part (ascending faces).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _fast


@dataclass(frozen=True)
class OrderedPartition:
    """Composition of an integer (or an interval) in order of appearance."""

    parts: tuple

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


@dataclass(frozen=True)
class LowerHull:
    """Ordered vertices of a lower convex hull.

    mode 'strict' keeps only extreme vertices; 'split' subdivides faces
    at lattice points (integer inputs) and at input points lying exactly
    on a face, so that the face count weights each face by its lattice
    length.
    """

    vertices: tuple
    mode: str = "strict"

    @property
    def faces(self):
        """Sequence of (dx, dy, slope) per face, left to right."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            dx = x1 - x0
            dy = y1 - y0
            out.append((dx, dy, dy / dx))
        return out

    @property
    def split_index(self):
        """Index of the minimum-y vertex."""
        ys = [v[1] for v in self.vertices]
        return ys.index(min(ys))

    def face_count(self):
        return len(self.vertices) - 1


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (b[0] - o[0]) * (a[1] - o[1])


def _is_integral(v) -> bool:
    if isinstance(v, int):
        return True
    if isinstance(v, float):
        return v.is_integer()
    try:  # Fractions and ints in disguise
        return v == int(v)
    except (TypeError, ValueError):
        return False


def lower_hull(points: Sequence, mode: str = "strict") -> LowerHull:
    """Strict or split-mode lower convex hull of a planar point set.

    Ties in x keep the minimum-y point. Collinear interior points are
    dropped in strict mode; split mode re-inserts lattice points (and
    exactly-collinear input points) on face interiors.
    """
    if mode not in ("strict", "split"):
        raise ValueError(f"unknown mode {mode!r}")
    pts = sorted((tuple(p) for p in points), key=lambda p: (p[0], p[1]))
    if not pts:
        raise ValueError("need at least one point")
    dedup = []
    for p in pts:
        if dedup and dedup[-1][0] == p[0]:
            continue
        dedup.append(p)

    chain = []
    for p in dedup:
        while len(chain) > 1 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)

    if mode == "split" and len(chain) > 1:
        chain = _subdivide(chain, dedup)
    return LowerHull(vertices=tuple(chain), mode=mode)


def _subdivide(chain, pts):
    out = [chain[0]]
    for v0, v1 in zip(chain, chain[1:]):
        inner = set()
        integral = all(_is_integral(c) for c in (*v0, *v1))
        if integral:
            dx = int(v1[0]) - int(v0[0])
            dy = int(v1[1]) - int(v0[1])
            g = math.gcd(abs(dx), abs(dy))
            for j in range(1, g):
                inner.add((v0[0] + dx * j // g, v0[1] + dy * j // g))
        for p in pts:
            if v0[0] < p[0] < v1[0] and _cross(v0, v1, p) == 0:
                inner.add(p)
        out.extend(sorted(inner))
        out.append(v1)
    return out


def face_count(hull: LowerHull) -> int:
    return hull.face_count()


def split_hull(hull: LowerHull):
    """(lower-left, lower-right) sub-hulls at the unique min-y vertex."""
    ys = [v[1] for v in hull.vertices]
    ymin = min(ys)
    if ys.count(ymin) > 1:
        raise ValueError("minimum-y vertex is not unique")
    k = ys.index(ymin)
    left = LowerHull(vertices=hull.vertices[: k + 1], mode=hull.mode)
    right = LowerHull(vertices=hull.vertices[k:], mode=hull.mode)
    return left, right


def index_partition(hull: LowerHull) -> OrderedPartition:
    """Composition of consecutive vertex-index gaps (integer x only)."""
    xs = [v[0] for v in hull.vertices]
    if not all(_is_integral(x) for x in xs):
        raise ValueError("index partition requires integer x-coordinates")
    parts = tuple(int(b) - int(a) for a, b in zip(xs, xs[1:]))
    return OrderedPartition(parts)


def _g_funcs(dist):
    """(G([0, y]), integral of y dG over [0, y]) as scalar functions."""
    if dist is None:
        return (lambda y: y), (lambda y: 0.5 * y * y)

    def moment(y):
        return y * float(dist.g_of(y)) - float(dist.g_integral(y))

    return (lambda y: float(dist.g_of(y))), moment


def _clipped_area(dist, x0, h, lx_prev, lx, x_max):
    """lambda x G area of the triangle with apex (x0, h) and base
    [lx_prev, lx] on the x-axis, restricted to x < x_max (x0 < x_max)."""
    g, m = _g_funcs(dist)

    def left(y):
        return lx_prev + (x0 - lx_prev) * (y / h)

    def right(y):
        return lx + (x0 - lx) * (y / h)

    # the cross-section width min(right, x_max) - left is piecewise
    # linear in y; cut at the heights where either edge crosses x_max
    cuts = {0.0, h}
    if x0 < x_max < lx:
        cuts.add(h * (lx - x_max) / (lx - x0))
    if lx_prev > x_max:
        cuts.add(h * (lx_prev - x_max) / (lx_prev - x0))
    ys = sorted(c for c in cuts if 0.0 <= c <= h)
    total = 0.0
    for a, b in zip(ys, ys[1:]):
        if b <= a:
            continue
        wa = min(right(a), x_max) - left(a)
        wb = min(right(b), x_max) - left(b)
        if wa <= 0.0 and wb <= 0.0:
            continue
        beta = (wb - wa) / (b - a)
        alpha = wa - beta * a
        total += alpha * (g(b) - g(a)) + beta * (m(b) - m(a))
    return total


def triangle_areas(plus_hull: LowerHull, dist=None,
                   x_max: float | None = None) -> np.ndarray:
    """G-weighted triangle areas of the region under a lower-left hull.

    Consecutive support lines, extended to their x-axis intercepts,
    carve the region between the hull and the x-axis into one triangle
    per face. Each area is measured with respect to lambda x G; with
    ``dist=None`` G is the Lebesgue measure and the values are plain
    planar areas. When the points live on a strip of width ``x_max``,
    pass it so the parts of the triangles beyond the strip edge (where
    lambda carries no mass) are excluded.
    """
    verts = plus_hull.vertices
    if len(verts) < 2:
        return np.empty(0)
    areas = []
    lx_prev = float(verts[0][0])
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        slope = (y1 - y0) / (x1 - x0)
        if slope >= 0:
            raise ValueError("triangle areas require a descending (lower-left) hull")
        lx = x0 - y0 / slope
        h = float(y0)
        if x_max is None or lx <= x_max:
            gi = 0.5 * h * h if dist is None else dist.g_integral(h)
            areas.append((lx - lx_prev) * gi / h)
        else:
            areas.append(_clipped_area(dist, float(x0), h, lx_prev, lx, x_max))
        lx_prev = lx
    return np.asarray(areas, dtype=float)


def hull_from_arrays(x: np.ndarray, y: np.ndarray) -> LowerHull:
    """Strict lower hull of float arrays via the compiled kernel."""
    order = np.lexsort((y, x))
    xs = np.ascontiguousarray(np.asarray(x, dtype=float)[order])
    ys = np.ascontiguousarray(np.asarray(y, dtype=float)[order])
    if len(xs) > 1:
        keep = np.empty(len(xs), dtype=bool)
        keep[0] = True
        np.not_equal(xs[1:], xs[:-1], out=keep[1:])
        xs = np.ascontiguousarray(xs[keep])
        ys = np.ascontiguousarray(ys[keep])
    idx = _fast.lower_hull_indices(xs, ys)
    return LowerHull(vertices=tuple(zip(xs[idx].tolist(), ys[idx].tolist())))
