"""Reproducible parallel Monte Carlo for the non-absorbed tuple statistic.

Every trial draws its own generator from ``trial_seed(seed, t)``, so a
trial's outcome depends only on ``(seed, t)``.  Workers return integer
counts, which are concatenated in trial order and reduced exactly; the
mean is therefore identical for any worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Sequence

import numpy as np

from .walks import IncrementSampler, index_tuples, sample_bridge, sample_walk
from .geometry import tuples_in_hull_fast

__all__ = [
    "MonteCarloEstimate",
    "Histogram",
    "trial_seed",
    "simulate_counts",
    "monte_carlo_expected_m",
    "monte_carlo_nonabsorption",
    "empirical_distribution_of_m",
]

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(seed: int, trial: int) -> int:
    """64-bit seed of one trial: ``splitmix64(seed xor splitmix64(trial))``."""
    return _splitmix64((seed & _MASK64) ^ _splitmix64(trial))


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int
    target: str
    total: int = 0
    total_sq: int = 0

    def z_score(self, exact) -> float:
        if self.std_error == 0:
            return 0.0 if Fraction(self.mean) == Fraction(exact) else float("inf")
        return (self.mean - float(exact)) / self.std_error


def _trial_chunk(args) -> np.ndarray:
    n, k, d, kind, bridge, seed, start, stop = args
    sampler = IncrementSampler(kind, d)
    m = n - 1 if bridge else n
    combos = index_tuples(m, k)
    out = np.empty(stop - start, dtype=np.int64)
    draw = sample_bridge if bridge else sample_walk
    for j, t in enumerate(range(start, stop)):
        path = draw(n, d, sampler, trial_seed(seed, t))
        absorbed = int(tuples_in_hull_fast(path.tuple_points, combos).sum())
        out[j] = len(combos) - absorbed
    return out


def simulate_counts(n: int, k: int, d: int, sampler: str, trials: int, seed: int,
                    workers: int = 1, bridge: bool = False) -> np.ndarray:
    """Per-trial non-absorbed tuple counts (``2 M``), in trial order."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if bridge and not 1 <= k <= n - 1:
        raise ValueError(f"bridge needs 1 <= k <= n-1, got n={n}, k={k}")
    if not bridge and not 1 <= k <= n:
        raise ValueError(f"walk needs 1 <= k <= n, got n={n}, k={k}")
    kind = IncrementSampler(sampler, d).kind
    if workers <= 1:
        return _trial_chunk((n, k, d, kind, bridge, seed, 0, trials))
    parts = min(trials, 8 * workers)
    edges = np.linspace(0, trials, parts + 1).astype(int)
    jobs = [(n, k, d, kind, bridge, seed, int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(_trial_chunk, jobs)))


def _estimate(values: np.ndarray, scale: Fraction, trials: int, seed: int, target: str) -> MonteCarloEstimate:
    # exact integer moments; the float conversion happens once at the end
    total = int(values.sum())
    total_sq = int((values.astype(object) ** 2).sum())
    mean = Fraction(total, trials) * scale
    if trials > 1:
        var = Fraction(total_sq * trials - total * total, trials * (trials - 1)) * scale * scale
        se = sqrt(var / trials)
    else:
        se = 0.0
    return MonteCarloEstimate(float(mean), se, trials, seed, target, total, total_sq)


def monte_carlo_expected_m(n: int, k: int, d: int, sampler: str, trials: int, seed: int,
                           workers: int = 1, bridge: bool = False) -> MonteCarloEstimate:
    """Sample mean of ``M`` (half the non-absorbed tuple count) with its standard error."""
    counts = simulate_counts(n, k, d, sampler, trials, seed, workers, bridge)
    label = f"E M ({'bridge' if bridge else 'walk'}, n={n}, k={k}, d={d}, {IncrementSampler(sampler, d).kind})"
    return _estimate(counts, Fraction(1, 2), trials, seed, label)


def monte_carlo_nonabsorption(n: int, d: int, sampler: str, trials: int, seed: int,
                              workers: int = 1, bridge: bool = False) -> MonteCarloEstimate:
    """Fraction of paths whose full hull (of ``S_1..S_n``, or ``..S_{n-1}`` for bridges) misses 0."""
    k = n - 1 if bridge else n
    counts = simulate_counts(n, k, d, sampler, trials, seed, workers, bridge)
    label = f"P[0 not in hull] ({'bridge' if bridge else 'walk'}, n={n}, d={d}, {IncrementSampler(sampler, d).kind})"
    return _estimate(counts, Fraction(1), trials, seed, label)


@dataclass(frozen=True)
class Histogram:
    sampler: str
    counts: tuple[int, ...]

    @property
    def trials(self) -> int:
        return sum(self.counts)

    def pmf(self) -> list[Fraction]:
        t = self.trials
        return [Fraction(c, t) for c in self.counts]


def total_variation(p: Sequence, q: Sequence) -> Fraction:
    size = max(len(p), len(q))
    p = list(p) + [0] * (size - len(p))
    q = list(q) + [0] * (size - len(q))
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(p, q)), Fraction(0)) / 2


def empirical_distribution_of_m(n: int, k: int, d: int, samplers: Sequence[str], trials: int,
                                seed: int, workers: int = 1, bridge: bool = False):
    """Histograms of ``2 M`` per sampler and pairwise total-variation distances.

    Exploratory only: the law of ``M`` is not expected to be distribution-free.
    """
    if len(samplers) < 2:
        raise ValueError("need at least two samplers to compare")
    size = comb(n - 1 if bridge else n, k) + 1
    hists = []
    for s in samplers:
        counts = simulate_counts(n, k, d, s, trials, seed, workers, bridge)
        hists.append(Histogram(IncrementSampler(s, d).kind, tuple(int(c) for c in np.bincount(counts, minlength=size))))
    distances = {
        (i, j): total_variation(hists[i].pmf(), hists[j].pmf())
        for i, j in itertools.combinations(range(len(hists)), 2)
    }
    return hists, distances
