"""Floating phase-1 simplex for origin-in-hull, compiled with numba.

Each test returns a code: 0 (origin outside), 1 (inside, with a certificate
whose barycentric weights clear the band), or 2 (ambiguous; the caller must
rerun the exact test).
"""

import math

import numpy as np
from numba import njit

OUTSIDE = 0
INSIDE = 1
AMBIGUOUS = 2

_PIVOT_EPS = 1e-12


@njit(cache=True)
def hull_code(points, band):
    m, d = points.shape
    rows = d + 1
    width = m + rows + 1
    t = np.zeros((rows + 1, width))
    for i in range(m):
        nrm = 0.0
        for r in range(d):
            nrm += points[i, r] * points[i, r]
        if nrm == 0.0:
            return AMBIGUOUS
        nrm = math.sqrt(nrm)
        for r in range(d):
            t[r, i] = points[i, r] / nrm
        t[d, i] = 1.0
    for r in range(rows):
        t[r, m + r] = 1.0
    t[d, width - 1] = 1.0
    for r in range(rows):
        for j in range(width):
            t[rows, j] -= t[r, j]
    for r in range(rows):
        t[rows, m + r] = 0.0
    basis = np.empty(rows, dtype=np.int64)
    for r in range(rows):
        basis[r] = m + r

    max_iter = 50 * (m + rows)
    it = 0
    while True:
        q = -1
        for j in range(m):
            if t[rows, j] < -_PIVOT_EPS:
                q = j
                break
        if q < 0:
            break
        it += 1
        if it > max_iter:
            return AMBIGUOUS
        p = -1
        best = 0.0
        for i in range(rows):
            a = t[i, q]
            if a > _PIVOT_EPS:
                ratio = t[i, width - 1] / a
                if p < 0 or ratio < best - _PIVOT_EPS or (
                    abs(ratio - best) <= _PIVOT_EPS and basis[i] < basis[p]
                ):
                    p = i
                    best = ratio
        if p < 0:
            return AMBIGUOUS
        piv = t[p, q]
        for j in range(width):
            t[p, j] /= piv
        for i in range(rows + 1):
            if i != p:
                f = t[i, q]
                if f != 0.0:
                    for j in range(width):
                        t[i, j] -= f * t[p, j]
        basis[p] = q

    infeasibility = -t[rows, width - 1]
    if infeasibility > band:
        return OUTSIDE

    alpha = np.zeros(m)
    for r in range(rows):
        b = basis[r]
        v = t[r, width - 1]
        if b < m:
            if v < band:
                return AMBIGUOUS
            alpha[b] = v
        elif abs(v) > band:
            return AMBIGUOUS
    total = 0.0
    for i in range(m):
        total += alpha[i]
    if abs(total - 1.0) > band:
        return AMBIGUOUS
    for r in range(d):
        acc = 0.0
        for i in range(m):
            if alpha[i] != 0.0:
                nrm = 0.0
                for s in range(d):
                    nrm += points[i, s] * points[i, s]
                acc += alpha[i] * points[i, r] / math.sqrt(nrm)
        if abs(acc) > band:
            return AMBIGUOUS
    return INSIDE


@njit(cache=True)
def tuple_codes(sums, combos, band):
    """Hull code for every index tuple (row of ``combos``) over the rows of ``sums``."""
    n_tuples, k = combos.shape
    d = sums.shape[1]
    out = np.empty(n_tuples, dtype=np.int8)
    pts = np.empty((k, d))
    for c in range(n_tuples):
        for a in range(k):
            for r in range(d):
                pts[a, r] = sums[combos[c, a], r]
        out[c] = hull_code(pts, band)
    return out
