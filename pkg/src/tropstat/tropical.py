"""Min-plus tropical polynomials and their zeros.

A zero of min_i (C_i + i x) is a location where the minimum is attained
at least twice. Zeros correspond bijectively to the faces of the lower
convex hull of the points (i, C_i); the multiplicity of a zero is the
lattice length of its face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _fast
from .hull import LowerHull, _is_integral, lower_hull


@dataclass(frozen=True)
class TropicalZero:
    location: float
    multiplicity: int


@dataclass(frozen=True)
class TropicalPolynomial:
    """Coefficients C_0..C_n of min_i (C_i + i x)."""

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("need at least one coefficient")
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValueError("coefficients must be finite")

    @property
    def degree(self):
        return len(self.coefficients) - 1


def evaluate(poly: TropicalPolynomial, x):
    return min(c + i * x for i, c in enumerate(poly.coefficients))


def _coeff_hull(poly: TropicalPolynomial, mode: str = "strict") -> LowerHull:
    return lower_hull(list(enumerate(poly.coefficients)), mode=mode)


def zeros(poly: TropicalPolynomial) -> list[TropicalZero]:
    """Zeros in ascending location with lattice-length multiplicities.

    For non-integral coefficients the lattice length of a face is taken
    as the number of input points it passes through minus one; for
    continuous random coefficients that is almost surely 1.
    """
    hull = _coeff_hull(poly)
    integral = all(_is_integral(c) for c in poly.coefficients)
    out = []
    for (i, ci), (j, cj) in zip(hull.vertices, hull.vertices[1:]):
        loc = (ci - cj) / (j - i)
        if isinstance(loc, Fraction) and loc.denominator == 1:
            loc = int(loc)
        if integral:
            mult = math.gcd(int(j) - int(i), abs(int(cj) - int(ci)))
        else:
            mult = 1 + sum(
                1
                for k in range(int(i) + 1, int(j))
                if (poly.coefficients[k] - ci) * (j - i) == (cj - ci) * (k - i)
            )
        out.append(TropicalZero(location=loc, multiplicity=mult))
    # face slopes increase left to right, so locations (their negatives) descend
    out.reverse()
    return out


def zero_count(poly: TropicalPolynomial, counting: str = "distinct") -> int:
    """Number of zeros, 'distinct' or 'with_multiplicity'."""
    if counting == "distinct":
        return _coeff_hull(poly).face_count()
    if counting == "with_multiplicity":
        if not all(_is_integral(c) for c in poly.coefficients):
            raise ValueError("multiplicity counting requires integer coefficients")
        return sum(z.multiplicity for z in zeros(poly))
    raise ValueError(f"unknown counting mode {counting!r}")


def random_polynomial(dist, n: int, rng: np.random.Generator) -> TropicalPolynomial:
    """Degree-n polynomial with n+1 i.i.d. coefficients from `dist`."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    coeffs = np.asarray(dist.sample(rng, n + 1), dtype=float)
    return TropicalPolynomial(coefficients=tuple(coeffs.tolist()))


def fast_zero_count(coefficients: np.ndarray) -> int:
    """Strict zero count straight from a float coefficient array."""
    return int(_fast.zn_count(np.ascontiguousarray(coefficients, dtype=float)))
