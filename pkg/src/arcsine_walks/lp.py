"""Exact phase-1 simplex for ``A x = b, x >= 0`` feasibility.

The tableau is kept in integers with a single common denominator (Bareiss-style
integer-preserving pivoting), so no ``Fraction`` normalisation happens inside
the pivot loop.  Entering and leaving variables follow Bland's rule, which
guarantees termination on degenerate instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import as_fraction, integer_row


@dataclass
class Phase1Result:
    feasible: bool
    solution: Optional[list[Fraction]]
    pivots: int


def phase1(a_eq: Sequence[Sequence], b_eq: Sequence, max_pivots: Optional[int] = None) -> Phase1Result:
    """Decide whether ``a_eq @ x == b_eq`` has a solution with ``x >= 0``.

    ``a_eq`` and ``b_eq`` may hold ints, Fractions or floats (floats are lifted
    exactly).  On success a witness ``x`` is returned as Fractions.
    """
    m = len(a_eq)
    if m != len(b_eq):
        raise ValueError("row count of a_eq and b_eq differ")
    if m == 0:
        return Phase1Result(True, [], 0)
    n = len(a_eq[0])
    rows = []
    for row, rhs in zip(a_eq, b_eq):
        if len(row) != n:
            raise ValueError("a_eq is not rectangular")
        ir = integer_row(list(row) + [as_fraction(rhs)])
        if ir[-1] < 0:
            ir = [-v for v in ir]
        rows.append(ir)

    width = n + m + 1
    tab = []
    for i, ir in enumerate(rows):
        line = ir[:n] + [0] * m + [ir[n]]
        line[n + i] = 1
        tab.append(line)
    obj = [0] * width
    for line in tab:
        for j in range(n):
            obj[j] -= line[j]
        obj[-1] -= line[-1]
    tab.append(obj)
    basis = [n + i for i in range(m)]

    denom = 1
    pivots = 0
    while True:
        obj = tab[m]
        # artificial columns never re-enter once they leave
        q = next((j for j in range(n) if obj[j] < 0), None)
        if q is None:
            break
        p = None
        for i in range(m):
            aiq = tab[i][q]
            if aiq <= 0:
                continue
            if p is None:
                p = i
                continue
            # compare tab[i][-1]/aiq with tab[p][-1]/tab[p][q]
            lhs = tab[i][-1] * tab[p][q]
            rhs = tab[p][-1] * aiq
            if lhs < rhs or (lhs == rhs and basis[i] < basis[p]):
                p = i
        if p is None:  # cannot happen: phase-1 objective is bounded below
            raise RuntimeError("phase-1 objective unbounded")
        prow = tab[p]
        piv = prow[q]
        for i in range(m + 1):
            if i == p:
                continue
            row = tab[i]
            f = row[q]
            if f == 0:
                if piv != denom:
                    for j in range(width):
                        if row[j]:
                            row[j] = row[j] * piv // denom
            else:
                for j in range(width):
                    row[j] = (piv * row[j] - f * prow[j]) // denom
        denom = piv
        basis[p] = q
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    if tab[m][-1] != 0:
        return Phase1Result(False, None, pivots)
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(tab[i][-1], denom)
    return Phase1Result(True, x, pivots)


def is_feasible(a_eq, b_eq) -> bool:
    return phase1(a_eq, b_eq).feasible
