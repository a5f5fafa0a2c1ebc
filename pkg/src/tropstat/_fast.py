"""Numba kernels for the Monte Carlo hot path.

All kernels expect points pre-sorted by strictly increasing x. They are
float-only; the exact (int / Fraction) path lives in `hull`.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def lower_hull_indices(x, y):
    """Indices of the strict lower-hull vertices of sorted-by-x points."""
    n = x.shape[0]
    stack = np.empty(n, np.int64)
    m = 0
    for i in range(n):
        while m > 1:
            a = stack[m - 2]
            b = stack[m - 1]
            # cross <= 0: b is on or above segment a->i, drop it
            if (x[b] - x[a]) * (y[i] - y[a]) - (x[i] - x[a]) * (y[b] - y[a]) <= 0.0:
                m -= 1
            else:
                break
        stack[m] = i
        m += 1
    return stack[:m].copy()


@njit(cache=True, nogil=True)
def lower_hull_counts(x, y):
    """(total, plus, minus) strict lower-hull face counts in one pass.

    `plus` counts the faces left of the minimum-y vertex (descending,
    support vectors (1, alpha) with alpha > 0), `minus` the ascending
    faces to its right.
    """
    n = x.shape[0]
    stack = np.empty(n, np.int64)
    m = 0
    for i in range(n):
        while m > 1:
            a = stack[m - 2]
            b = stack[m - 1]
            if (x[b] - x[a]) * (y[i] - y[a]) - (x[i] - x[a]) * (y[b] - y[a]) <= 0.0:
                m -= 1
            else:
                break
        stack[m] = i
        m += 1
    kmin = 0
    ymin = y[stack[0]]
    for j in range(1, m):
        yj = y[stack[j]]
        if yj < ymin:
            ymin = yj
            kmin = j
    return m - 1, kmin, m - 1 - kmin


@njit(cache=True, nogil=True)
def zn_count(y):
    """Strict face count of the lower hull of (i, y_i), i = 0..n."""
    n = y.shape[0]
    stack = np.empty(n, np.int64)
    m = 0
    for i in range(n):
        while m > 1:
            a = stack[m - 2]
            b = stack[m - 1]
            if (b - a) * (y[i] - y[a]) - (i - a) * (y[b] - y[a]) <= 0.0:
                m -= 1
            else:
                break
        stack[m] = i
        m += 1
    return m - 1
