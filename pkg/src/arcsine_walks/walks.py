"""Random walks and bridges with symmetric, hyperplane-atomless increments."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Union

import numpy as np

from .geometry import origin_in_hull, tuples_in_hull_fast

__all__ = [
    "SAMPLER_KINDS",
    "IncrementSampler",
    "WalkPath",
    "BridgePath",
    "TupleCount",
    "sample_walk",
    "sample_bridge",
    "count_positive_terms",
    "count_nonabsorbed_tuples",
    "index_tuples",
]

SAMPLER_KINDS = ("gaussian", "cauchy", "uniform", "brownian-uniform")
_ALIASES = {
    "normal": "gaussian",
    "heavy-tail": "cauchy",
    "uniform-cube-symmetric": "uniform",
    "brownian-uniform-times": "brownian-uniform",
}


@dataclass(frozen=True)
class IncrementSampler:
    """Law of the increments.

    ``cauchy`` is the isotropic multivariate Cauchy law ``Z / |W|`` with
    ``Z ~ N(0, I_d)``, ``W ~ N(0, 1)``; it has no moments at all.
    ``brownian-uniform`` returns the increments of a Brownian motion read at
    sorted uniform times: exchangeable and symmetric but not independent.
    """

    kind: str
    d: int

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in SAMPLER_KINDS:
            raise ValueError(f"unknown sampler {self.kind!r}; choose from {SAMPLER_KINDS}")
        if self.d < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "kind", kind)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        d = self.d
        if self.kind == "gaussian":
            return rng.standard_normal((n, d))
        if self.kind == "cauchy":
            z = rng.standard_normal((n, d))
            w = np.abs(rng.standard_normal((n, 1)))
            return z / w
        if self.kind == "uniform":
            return rng.uniform(-1.0, 1.0, size=(n, d))
        times = np.sort(rng.random(n))
        gaps = np.diff(times, prepend=0.0)
        return np.sqrt(gaps)[:, None] * rng.standard_normal((n, d))


@dataclass
class WalkPath:
    """Increments and partial sums ``S_1..S_n``; rows are steps.

    Float paths hold ``float64`` arrays; exact paths hold object arrays of
    ``Fraction``.
    """

    increments: np.ndarray
    partial_sums: np.ndarray
    is_bridge: bool = field(default=False, init=False)

    @property
    def n(self) -> int:
        return self.increments.shape[0]

    @property
    def d(self) -> int:
        return self.increments.shape[1]

    @property
    def exact(self) -> bool:
        return self.increments.dtype == object

    @property
    def tuple_points(self) -> np.ndarray:
        """Partial sums eligible for hull tuples."""
        return self.partial_sums

    @classmethod
    def from_increments(cls, increments) -> "WalkPath":
        inc = _as_path_array(increments)
        return cls(inc, np.cumsum(inc, axis=0))


@dataclass
class BridgePath(WalkPath):
    """A walk with ``S_n = 0``; tuples only range over ``S_1..S_{n-1}``."""

    def __post_init__(self):
        self.is_bridge = True

    @property
    def tuple_points(self) -> np.ndarray:
        return self.partial_sums[:-1]

    @classmethod
    def from_increments(cls, increments) -> "BridgePath":
        inc = _as_path_array(increments)
        sums = np.cumsum(inc, axis=0)
        if inc.dtype == object:
            if any(v != 0 for v in sums[-1]):
                raise ValueError("bridge increments must sum to zero")
        else:
            sums[-1] = 0.0
        return cls(inc, sums)


def _as_path_array(increments) -> np.ndarray:
    arr = np.asarray(increments, dtype=object)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("increments must form a non-empty (n, d) array")
    if all(isinstance(v, (int, Fraction)) for v in arr.flat):
        return np.vectorize(Fraction, otypes=[object])(arr)
    return arr.astype(float)


def _dyadic_round(x: np.ndarray, bits: int) -> np.ndarray:
    scale = 1 << bits
    out = np.empty(x.shape, dtype=object)
    for idx, v in np.ndenumerate(x):
        out[idx] = Fraction(int(round(float(v) * scale)), scale)
    return out


def sample_walk(n: int, d: int, sampler: Union[str, IncrementSampler], seed: int,
                exact_bits: Optional[int] = None) -> WalkPath:
    """Deterministic walk given ``(sampler, seed)``.

    With ``exact_bits`` the increments are rounded to multiples of
    ``2**-exact_bits`` and the path is carried in exact rationals.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sampler = sampler if isinstance(sampler, IncrementSampler) else IncrementSampler(sampler, d)
    if sampler.d != d:
        raise ValueError("sampler dimension differs from d")
    inc = sampler.draw(np.random.default_rng(seed), n)
    if exact_bits is not None:
        inc = _dyadic_round(inc, exact_bits)
    return WalkPath(inc, np.cumsum(inc, axis=0))


def sample_bridge(n: int, d: int, sampler: Union[str, IncrementSampler], seed: int,
                  exact_bits: Optional[int] = None) -> BridgePath:
    """Bridge from i.i.d. draws centred by their mean: ``xi_i - (sum xi') / n``.

    Partial sums are formed as ``S'_i - (i/n) S'_n``, which is the same path
    but pins ``S_n`` to exactly zero in floating point too.
    """
    if n < 2:
        raise ValueError("a bridge needs n >= 2")
    sampler = sampler if isinstance(sampler, IncrementSampler) else IncrementSampler(sampler, d)
    if sampler.d != d:
        raise ValueError("sampler dimension differs from d")
    raw = sampler.draw(np.random.default_rng(seed), n)
    if exact_bits is not None:
        raw = _dyadic_round(raw, exact_bits)
        total = raw.sum(axis=0)
        inc = raw - total / Fraction(n)
        return BridgePath(inc, np.cumsum(inc, axis=0))
    raw_sums = np.cumsum(raw, axis=0)
    steps = np.arange(1, n + 1, dtype=float)[:, None] / n
    sums = raw_sums - steps * raw_sums[-1]
    sums[-1] = 0.0
    inc = raw - raw_sums[-1] / n
    return BridgePath(inc, sums)


def count_positive_terms(path: WalkPath) -> int:
    """``#{i : S_i > 0}`` for a one-dimensional path (bridges skip ``S_n``)."""
    if path.d != 1:
        raise ValueError("positive-term count needs d = 1")
    return int(sum(1 for v in path.tuple_points[:, 0] if v > 0))


_TUPLE_CACHE: dict = {}


def index_tuples(m: int, k: int) -> np.ndarray:
    key = (m, k)
    arr = _TUPLE_CACHE.get(key)
    if arr is None:
        arr = np.array(list(itertools.combinations(range(m), k)), dtype=np.int64).reshape(-1, k)
        _TUPLE_CACHE[key] = arr
    return arr


def _unrank_combination(rank: int, m: int, k: int) -> tuple[int, ...]:
    out = []
    x = 0
    for slot in range(k, 0, -1):
        while comb(m - x - 1, slot - 1) <= rank:
            rank -= comb(m - x - 1, slot - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class TupleCount:
    """Non-absorbed k-tuples: ``count`` of them, ``M = count / 2``.

    In sampled mode ``count`` is the unbiased estimate ``total * hits / t``.
    """

    count: Fraction
    total: int
    sampled: int

    @property
    def m(self) -> Fraction:
        return self.count / 2

    @property
    def exhaustive(self) -> bool:
        return self.sampled == self.total


def _absorbed_mask(points: np.ndarray, combos: np.ndarray) -> np.ndarray:
    if points.dtype == object:
        return np.array([origin_in_hull(points[list(c)].tolist()) for c in combos], dtype=bool)
    return tuples_in_hull_fast(points, combos)


def count_nonabsorbed_tuples(path: WalkPath, k: int, sample: Optional[int] = None,
                             seed: int = 0) -> TupleCount:
    """Count k-tuples of eligible partial sums whose hull misses the origin.

    ``sample=None`` iterates over all tuples; ``sample=t`` draws ``t`` distinct
    tuples uniformly and scales the hit count.
    """
    points = path.tuple_points
    m = points.shape[0]
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range 1..{m}")
    total = comb(m, k)
    if sample is None or sample >= total:
        combos = index_tuples(m, k)
        absorbed = int(_absorbed_mask(points, combos).sum())
        return TupleCount(Fraction(total - absorbed), total, total)
    if sample < 1:
        raise ValueError("sample size must be positive")
    ranks = random.Random(seed).sample(range(total), sample)
    combos = np.array([_unrank_combination(r, m, k) for r in ranks], dtype=np.int64)
    absorbed = int(_absorbed_mask(points, combos).sum())
    return TupleCount(Fraction(total * (sample - absorbed), sample), total, sample)
