"""Exact closed forms for non-absorbed tuple counts of random walks and bridges.

Everything here is computed with Python integers and ``fractions.Fraction``;
nothing is rounded unless a caller converts explicitly.

The two coefficient families are

* ``B(k, j)``: coefficients of ``(t+1)(t+3)...(t+2k-1)``;
* ``s(m, j)``: unsigned Stirling numbers of the first kind, the coefficients
  of ``t(t+1)...(t+m-1)``.

Both follow the convention that an index outside ``0..k`` (resp. ``0..m``)
reads as zero.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial",
    "CoefficientRow",
    "b_row",
    "stirling_row",
    "alternating_tail",
    "expected_m_walk",
    "expected_m_bridge",
    "expected_containing_count",
    "nonabsorption_walk",
    "nonabsorption_bridge",
    "arcsine_pmf",
    "uniform_bridge_pmf",
    "limit_moment_walk",
    "limit_moment_bridge",
    "trivial_faces_b",
    "trivial_faces_a",
    "factorial_moment",
    "pushforward",
]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in one variable; ``coefficients[i]`` multiplies t**i."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coefficients", coeffs[:end])

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return 0

    def times_linear(self, root_shift: int) -> "IntPolynomial":
        """Multiply by ``(t + root_shift)``."""
        c = self.coefficients
        out = [0] * (len(c) + 1)
        for i, a in enumerate(c):
            out[i] += a * root_shift
            out[i + 1] += a
        return IntPolynomial(tuple(out))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


@dataclass(frozen=True)
class CoefficientRow:
    """Row ``values[0..k]`` of a coefficient triangle, zero outside that range."""

    k: int
    values: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.values):
            return self.values[j]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def parity_sum(self, parity: int) -> int:
        return sum(self.values[parity % 2::2])


class _RowCache:
    """Rows of ``prod_{i<k} (t + f(i))`` built by extending the last cached product."""

    def __init__(self, shift):
        self._shift = shift
        self._rows = [IntPolynomial.one()]
        self._lock = threading.Lock()

    def get(self, k: int) -> IntPolynomial:
        rows = self._rows
        if k < len(rows):
            return rows[k]
        with self._lock:
            while len(self._rows) <= k:
                i = len(self._rows)
                self._rows.append(self._rows[-1].times_linear(self._shift(i)))
            return self._rows[k]


_B_CACHE = _RowCache(lambda i: 2 * i - 1)
_STIRLING_CACHE = _RowCache(lambda i: i - 1)


def _check_positive(name: str, value: int, minimum: int = 1):
    if int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")


def b_row(k: int) -> CoefficientRow:
    """Coefficients ``[B(k,0), ..., B(k,k)]`` of ``(t+1)(t+3)...(t+2k-1)``.

    >>> list(b_row(3))
    [15, 23, 9, 1]
    """
    _check_positive("k", k)
    poly = _B_CACHE.get(k)
    return CoefficientRow(k, tuple(poly[j] for j in range(k + 1)))


def stirling_row(m: int) -> CoefficientRow:
    """Unsigned Stirling numbers ``[s(m,0), ..., s(m,m)]`` from ``t(t+1)...(t+m-1)``.

    >>> list(stirling_row(4))
    [0, 6, 11, 6, 1]
    """
    _check_positive("m", m)
    poly = _STIRLING_CACHE.get(m)
    return CoefficientRow(m, tuple(poly[j] for j in range(m + 1)))


def alternating_tail(row: CoefficientRow, start: int) -> int:
    """``row[start] + row[start-2] + row[start-4] + ...`` down to index 0."""
    return sum(row[j] for j in range(start, -1, -2))


def _walk_half_sum(k: int, d: int) -> int:
    return alternating_tail(b_row(k), d - 1)


def _bridge_half_sum(k: int, d: int) -> int:
    return alternating_tail(stirling_row(k + 1), d)


def expected_m_walk(n: int, k: int, d: int) -> Fraction:
    """Expected value of M (half the non-absorbed k-tuple count) for a walk.

    ``C(n,k) * (B(k,d-1) + B(k,d-3) + ...) / (2^k k!)``
    """
    _check_positive("n", n)
    _check_positive("k", k)
    _check_positive("d", d)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    return Fraction(comb(n, k) * _walk_half_sum(k, d), 2**k * factorial(k))


def expected_m_bridge(n: int, k: int, d: int) -> Fraction:
    """Expected value of M for a bridge, tuples drawn from ``S_1..S_{n-1}``.

    ``C(n-1,k) * (s(k+1,d) + s(k+1,d-2) + ...) / (k+1)!``
    """
    _check_positive("n", n, 2)
    _check_positive("k", k)
    _check_positive("d", d)
    if k >= n:
        raise ValueError(f"k={k} must be below n={n} for a bridge")
    return Fraction(comb(n - 1, k) * _bridge_half_sum(k, d), factorial(k + 1))


def expected_containing_count(n: int, k: int, d: int) -> Fraction:
    """Expected number (not halved) of k-tuples whose hull contains the origin."""
    _check_positive("n", n)
    _check_positive("k", k)
    _check_positive("d", d)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    tail = sum(b_row(k)[j] for j in range(d + 1, k + 1, 2))
    return Fraction(2 * comb(n, k) * tail, 2**k * factorial(k))


def nonabsorption_walk(n: int, d: int) -> Fraction:
    """P[0 not in Conv(S_1..S_n)] for a symmetric exchangeable walk in R^d."""
    _check_positive("n", n)
    _check_positive("d", d)
    return Fraction(2 * _walk_half_sum(n, d), 2**n * factorial(n))


def nonabsorption_bridge(n: int, d: int) -> Fraction:
    """P[0 not in Conv(S_1..S_{n-1})] for an exchangeable bridge in R^d."""
    _check_positive("n", n, 2)
    _check_positive("d", d)
    return Fraction(2 * alternating_tail(stirling_row(n), d), factorial(n))


def arcsine_pmf(n: int) -> list[Fraction]:
    """Discrete arcsine law of the number of positive partial sums, m = 0..n."""
    _check_positive("n", n)
    denom = 4**n
    return [Fraction(comb(2 * m, m) * comb(2 * n - 2 * m, n - m), denom) for m in range(n + 1)]


def uniform_bridge_pmf(n: int) -> list[Fraction]:
    """Law of the positive-term count of a one-dimensional bridge: uniform on 0..n-1."""
    _check_positive("n", n, 2)
    return [Fraction(1, n)] * n


def limit_moment_walk(k: int, d: int) -> Fraction:
    """Limit of ``E[k! M_{n,k} / n^k]``; equals ``E M_{k,k}``."""
    _check_positive("k", k)
    _check_positive("d", d)
    return Fraction(_walk_half_sum(k, d), 2**k * factorial(k))


def limit_moment_bridge(k: int, d: int) -> Fraction:
    """Bridge analogue: ``(s(k+1,d) + s(k+1,d-2) + ...) / (k+1)!``."""
    _check_positive("k", k)
    _check_positive("d", d)
    return Fraction(_bridge_half_sum(k, d), factorial(k + 1))


def trivial_faces_b(n: int, k: int, d: int) -> Fraction:
    """Average number of k-faces of a type-B_n chamber meeting a generic codim-d
    subspace only at the origin: ``2 C(n,k) (B(k,d-1) + B(k,d-3) + ...) / (2^k k!)``."""
    return 2 * expected_m_walk(n, k, d)


def trivial_faces_a(n: int, k: int, d: int) -> Fraction:
    """Type-A_{n-1} analogue: ``(2/k!) C(n-1,k-1) (s(k,d-1) + s(k,d-3) + ...)``.

    For ``k = 1`` the only face is the all-ones line, which a generic subspace
    of positive codimension always meets trivially; the closed form does not
    cover that case (it gives 0 or 2 instead of 1).
    """
    _check_positive("n", n)
    _check_positive("k", k)
    _check_positive("d", d)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    tail = alternating_tail(stirling_row(k), d - 1)
    return Fraction(2 * comb(n - 1, k - 1) * tail, factorial(k))


def factorial_moment(pmf: Sequence[Fraction], k: int) -> Fraction:
    """``E[C(N, k)]`` for a law given as a list indexed by the value of N."""
    return sum((p * comb(m, k) for m, p in enumerate(pmf)), Fraction(0))


def pushforward(pmf: Iterable[Fraction], fn) -> dict:
    """Law of ``fn(N)`` as a value -> probability mapping."""
    out: dict = {}
    for m, p in enumerate(pmf):
        key = fn(m)
        out[key] = out.get(key, Fraction(0)) + p
    return out
