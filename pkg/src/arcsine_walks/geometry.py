"""Exact geometry kernel: origin-in-hull, cone/subspace intersection, general position.

Subspaces are always given as kernels of a constraint matrix ``C`` (shape
``d x n``), so ``L = {x : C x = 0}`` has codimension ``rank(C)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import _fasthull
from .linalg import as_fraction, fraction_matrix, integer_row, matrix_rank, transpose
from .lp import phase1

__all__ = [
    "AMBIGUITY_BAND",
    "GP_MAX_DIM",
    "GeneralPositionError",
    "UnsupportedSizeError",
    "SubspaceSpec",
    "origin_in_hull",
    "origin_in_hull_fast",
    "dyadic_lift",
    "matrix_rank",
    "cone_meets_subspace_trivially",
    "lattice_subspaces",
    "general_position_check",
]

AMBIGUITY_BAND = 1e-9
GP_MAX_DIM = 8


class GeneralPositionError(ValueError):
    """Input violates a general-position assumption."""


class UnsupportedSizeError(ValueError):
    """Requested size exceeds an exhaustive-enumeration bound."""


@dataclass(frozen=True)
class SubspaceSpec:
    """The kernel of a full-row-rank constraint matrix."""

    constraints: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in self.constraints)
        if not rows or not rows[0]:
            raise ValueError("constraint matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("constraint matrix is not rectangular")
        if matrix_rank(rows) != len(rows):
            raise ValueError("constraint matrix must have full row rank")
        object.__setattr__(self, "constraints", rows)

    @property
    def ambient_dim(self) -> int:
        return len(self.constraints[0])

    @property
    def codim(self) -> int:
        return len(self.constraints)

    def column(self, i: int) -> tuple[Fraction, ...]:
        return tuple(row[i] for row in self.constraints)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(i) for i in range(self.ambient_dim)]

    def as_lists(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.constraints]


def _check_points(points) -> list[list[Fraction]]:
    pts = fraction_matrix(points)
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if d == 0 or any(len(p) != d for p in pts):
        raise ValueError("points must share a positive dimension")
    return pts


def origin_in_hull(points: Sequence[Sequence]) -> bool:
    """True iff 0 is a convex combination of ``points`` (exact arithmetic).

    >>> origin_in_hull([(2, 1), (-1, 1), (-1, -3)])
    True
    """
    pts = _check_points(points)
    d = len(pts[0])
    rows = transpose(pts) + [[1] * len(pts)]
    rhs = [0] * d + [1]
    return phase1(rows, rhs).feasible


def dyadic_lift(points) -> list[list[Fraction]]:
    """Exact rational copy of float points (mantissa / 2**exponent, no decimal detour)."""
    arr = np.asarray(points, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite coordinates")
    return [[Fraction(*float(v).as_integer_ratio()) for v in row] for row in arr]


def origin_in_hull_fast(points) -> bool:
    """Float phase-1 simplex with an exact fallback inside the ambiguity band."""
    arr = np.ascontiguousarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("points must be a non-empty (m, d) array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite coordinates")
    code = _fasthull.hull_code(arr, AMBIGUITY_BAND)
    if code == _fasthull.AMBIGUOUS:
        return origin_in_hull(dyadic_lift(arr))
    return code == _fasthull.INSIDE


def tuples_in_hull_fast(sums: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """Boolean mask over index tuples: does ``Conv(sums[tuple])`` contain 0?"""
    sums = np.ascontiguousarray(sums, dtype=float)
    if not np.all(np.isfinite(sums)):
        raise ValueError("non-finite coordinates")
    codes = _fasthull.tuple_codes(sums, combos, AMBIGUITY_BAND)
    inside = codes == _fasthull.INSIDE
    for c in np.flatnonzero(codes == _fasthull.AMBIGUOUS):
        inside[c] = origin_in_hull(dyadic_lift(sums[combos[c]]))
    return inside


def _chain_b_rows(m: list[list[Fraction]], k: int):
    # variables: gamma_1..gamma_k >= 0, slack_1..slack_{k-1} >= 0
    nvar = 2 * k - 1
    rows, rhs = [], []
    for row in m:
        rows.append(list(row) + [0] * (k - 1))
        rhs.append(0)
    for j in range(k - 1):
        r = [0] * nvar
        r[j], r[j + 1], r[k + j] = 1, -1, -1
        rows.append(r)
        rhs.append(0)
    r = [0] * nvar
    r[0] = 1
    rows.append(r)
    rhs.append(1)
    return rows, rhs


def _chain_a_rows(m: list[list[Fraction]], k: int):
    # gamma is free: gamma = plus - minus; slack_j = gamma_j - gamma_{j+1} >= 0
    nvar = 3 * k - 1
    rows, rhs = [], []
    for row in m:
        rows.append(list(row) + [-v for v in row] + [0] * (k - 1))
        rhs.append(0)
    for j in range(k - 1):
        r = [0] * nvar
        r[j], r[j + 1] = 1, -1
        r[k + j], r[k + j + 1] = -1, 1
        r[2 * k + j] = -1
        rows.append(r)
        rhs.append(0)
    # gamma_1 - gamma_k = 1, i.e. the slacks sum to one
    r = [0] * nvar
    for j in range(k - 1):
        r[2 * k + j] = 1
    rows.append(r)
    rhs.append(1)
    return rows, rhs


def cone_meets_subspace_trivially(kind: str, constraints: Sequence[Sequence]) -> bool:
    """Is ``{gamma in cone : constraints @ gamma = 0}`` equal to ``{0}``?

    ``kind`` is ``"B"`` for ``gamma_1 >= ... >= gamma_k >= 0`` or ``"A"`` for
    ``gamma_1 >= ... >= gamma_k`` (whose lineality space is the all-ones line).
    ``constraints`` has ``k`` columns.
    """
    # rescaling a row leaves the kernel unchanged
    m = [integer_row(r) for r in constraints]
    if not m or not m[0]:
        raise ValueError("cone dimension k must be at least 1")
    k = len(m[0])
    if any(len(r) != k for r in m):
        raise ValueError("constraint matrix is not rectangular")
    if matrix_rank(m) == k:
        return True
    if kind == "B":
        rows, rhs = _chain_b_rows(m, k)
    elif kind == "A":
        if all(sum(row) == 0 for row in m):
            return False
        if k == 1:
            return True
        rows, rhs = _chain_a_rows(m, k)
    else:
        raise ValueError(f"unknown cone kind {kind!r}")
    return not phase1(rows, rhs).feasible


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All unordered partitions of ``items`` into non-empty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def lattice_subspaces(n: int, arrangement: str) -> Iterator[list[tuple[int, ...]]]:
    """Spanning vectors of every nonzero subspace in the intersection lattice.

    Type ``"B"``: a zero set plus sign-normalised blocks ``sum eta_i e_i``.
    Type ``"A"``: block indicator vectors of a set partition.
    """
    idx = range(n)
    if arrangement == "A":
        for part in set_partitions(idx):
            yield [tuple(1 if i in block else 0 for i in idx) for block in part]
        return
    if arrangement != "B":
        raise ValueError(f"unknown arrangement {arrangement!r}")
    for zsize in range(n):
        for zero in itertools.combinations(idx, zsize):
            free = [i for i in idx if i not in zero]
            for part in set_partitions(free):
                sign_choices = [itertools.product((1, -1), repeat=len(b) - 1) for b in part]
                for signs in itertools.product(*sign_choices):
                    basis = []
                    for block, tail in zip(part, signs):
                        v = [0] * n
                        v[block[0]] = 1
                        for i, s in zip(block[1:], tail):
                            v[i] = s
                        basis.append(tuple(v))
                    yield basis


def general_position_check(subspace: SubspaceSpec, arrangement: str) -> bool:
    """Check ``dim(L & K) = max(dim K - d, 0)`` for every lattice subspace K."""
    n = subspace.ambient_dim
    if n > GP_MAX_DIM:
        raise UnsupportedSizeError(f"general position certification supports n <= {GP_MAX_DIM}, got {n}")
    d = subspace.codim
    cols = subspace.columns()
    for basis in lattice_subspaces(n, arrangement):
        dim_k = len(basis)
        # C restricted to K: column j is C @ basis[j]
        images = [
            [sum(c[r] * coeff for c, coeff in zip(cols, vec) if coeff) for vec in basis]
            for r in range(d)
        ]
        if matrix_rank(images) != min(dim_k, d):
            return False
    return True
