"""Exact rational matrices: integer row scaling and fraction-free rank."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Sequence

Matrix = Sequence[Sequence[Rational]]


def as_fraction(x) -> Fraction:
    """Exact conversion; floats are lifted through their binary expansion."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"cannot lift non-finite value {x!r}")
        return Fraction(*x.as_integer_ratio())
    return Fraction(x)


def fraction_matrix(rows) -> list[list[Fraction]]:
    return [[as_fraction(v) for v in row] for row in rows]


def integer_row(row: Sequence) -> list[int]:
    """Positive multiple of a rational row with integer entries."""
    if all(type(v) is int for v in row):
        return list(row)
    fr = [as_fraction(v) for v in row]
    scale = lcm(*(f.denominator for f in fr)) if fr else 1
    return [f.numerator * (scale // f.denominator) for f in fr]


def transpose(rows: Matrix) -> list[list]:
    return [list(col) for col in zip(*rows)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matrix_rank(rows: Matrix) -> int:
    """Rank by Bareiss fraction-free elimination on an integer-scaled copy.

    >>> matrix_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    2
    """
    a = [integer_row(r) for r in rows if len(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not rectangular")
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        pivot = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            for j in range(col + 1, n):
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank
