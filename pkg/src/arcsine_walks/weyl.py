"""Faces of Weyl chambers of types B_n and A_{n-1} and their intersections with subspaces.

Coordinates are 0-based throughout: a chamber permutation ``sigma`` is a
tuple holding a rearrangement of ``range(n)``.

Faces of all chambers are enumerated once each, through ordered block
structures with multiplicity weights, so no loop over the ``2^n n!``
chambers is ever needed.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import arcsine_pmf, trivial_faces_a, trivial_faces_b
from .geometry import (
    GP_MAX_DIM,
    GeneralPositionError,
    SubspaceSpec,
    UnsupportedSizeError,
    cone_meets_subspace_trivially,
    general_position_check,
    origin_in_hull,
    set_partitions,
)
from .linalg import as_fraction, integer_row, matrix_rank

__all__ = [
    "ChamberB",
    "ChamberA",
    "SignedPartition",
    "Partition",
    "FaceCountReport",
    "EquivalenceResult",
    "DegenerateNormalError",
    "enumerate_signed_partitions",
    "enumerate_partitions",
    "face_multiplicity",
    "random_gp_subspace",
    "average_trivial_faces_B",
    "average_trivial_faces_A",
    "walk_face_equivalence",
    "bridge_face_equivalence",
    "chamber_vertex_count",
    "corollary_vertex_distribution",
]


class DegenerateNormalError(ValueError):
    """A chamber vertex lies on the hyperplane."""


@dataclass(frozen=True)
class ChamberB:
    """``eps_1 b_{sigma(1)} >= ... >= eps_n b_{sigma(n)} >= 0``."""

    eps: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError("sigma must be a permutation of range(n)")
        if len(self.eps) != len(self.sigma) or any(e not in (1, -1) for e in self.eps):
            raise ValueError("eps must be a sign vector of length n")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def vertices(self) -> list[tuple[int, ...]]:
        """Nonzero vertices of the chamber cut by the cube [-1, 1]^n."""
        v = [0] * self.n
        out = []
        for e, s in zip(self.eps, self.sigma):
            v[s] = e
            out.append(tuple(v))
        return out


@dataclass(frozen=True)
class ChamberA:
    """``b_{sigma(1)} >= ... >= b_{sigma(n)}``."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError("sigma must be a permutation of range(n)")


@dataclass(frozen=True)
class SignedPartition:
    """Index of one k-face of the B_n fan.

    ``blocks`` are the ordered non-empty groups I_1..I_k, ``zero`` is the
    (possibly empty) group of coordinates forced to vanish, and ``eta`` maps
    each coordinate outside ``zero`` to its sign.
    """

    blocks: tuple[tuple[int, ...], ...]
    zero: tuple[int, ...]
    eta: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def sign(self, i: int) -> int:
        return dict(self.eta)[i]


@dataclass(frozen=True)
class Partition:
    """Ordered partition I_1..I_k of range(n) into non-empty blocks (a k-face of the A fan)."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class FaceCountReport:
    arrangement: str
    n: int
    k: int
    d: int
    subspace: SubspaceSpec
    average_trivial: Fraction
    formula_value: Fraction

    @property
    def match(self) -> bool:
        return self.average_trivial == self.formula_value


@dataclass(frozen=True)
class EquivalenceResult:
    absorbed_tuples: int
    nontrivial_faces: int

    @property
    def equal(self) -> bool:
        return self.absorbed_tuples == self.nontrivial_faces


def _ordered_partitions(items: Sequence[int], k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for part in set_partitions(items):
        if len(part) != k:
            continue
        for order in itertools.permutations(part):
            yield tuple(tuple(b) for b in order)


def _block_structures(n: int, k: int) -> Iterator[tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]]:
    """Pairs (ordered blocks I_1..I_k, zero block) covering range(n)."""
    idx = range(n)
    for zsize in range(n - k + 1):
        for zero in itertools.combinations(idx, zsize):
            free = [i for i in idx if i not in zero]
            for blocks in _ordered_partitions(free, k):
                yield blocks, zero


def enumerate_signed_partitions(n: int, k: int) -> Iterator[SignedPartition]:
    """Every k-face of every B_n chamber, each exactly once."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    for blocks, zero in _block_structures(n, k):
        free = sorted(i for b in blocks for i in b)
        for signs in itertools.product((1, -1), repeat=len(free)):
            yield SignedPartition(blocks, zero, tuple(zip(free, signs)))


def enumerate_partitions(n: int, k: int) -> Iterator[Partition]:
    """Every k-face of every A_{n-1} chamber, each exactly once."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    for blocks in _ordered_partitions(range(n), k):
        yield Partition(blocks)


def face_multiplicity(p) -> int:
    """Number of chambers containing the face.

    >>> face_multiplicity(SignedPartition(((1, 3), (0, 5), (2,)), (4, 6, 7), ()))
    192
    """
    mult = 1
    for b in p.blocks:
        mult *= factorial(len(b))
    zero = getattr(p, "zero", ())
    return mult * factorial(len(zero)) * 2 ** len(zero)


def _int_constraints(subspace: SubspaceSpec) -> list[list[int]]:
    return [integer_row(row) for row in subspace.constraints]


def _face_matrix(cols: Sequence[Sequence[int]], blocks, signs: dict) -> list[list[int]]:
    d = len(cols[0])
    out = [[0] * len(blocks) for _ in range(d)]
    for l, block in enumerate(blocks):
        for i in block:
            s = signs[i] if signs is not None else 1
            c = cols[i]
            for r in range(d):
                out[r][l] += s * c[r]
    return out


def _b_weight_chunk(args) -> int:
    cols, structures = args
    total = 0
    for blocks, zero in structures:
        mult = face_multiplicity(SignedPartition(blocks, zero, ()))
        free = sorted(i for b in blocks for i in b)
        # eta and -eta give negated face matrices with the same kernel
        for tail in itertools.product((1, -1), repeat=len(free) - 1):
            signs = dict(zip(free, (1,) + tail))
            if cone_meets_subspace_trivially("B", _face_matrix(cols, blocks, signs)):
                total += 2 * mult
    return total


def _a_weight_chunk(args) -> int:
    cols, structures = args
    total = 0
    for blocks in structures:
        mult = 1
        for b in blocks:
            mult *= factorial(len(b))
        if cone_meets_subspace_trivially("A", _face_matrix(cols, blocks, None)):
            total += mult
    return total


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _weighted_sum(worker, cols, structures: list, workers: int) -> int:
    if workers <= 1 or len(structures) < 2:
        return worker((cols, structures))
    jobs = [(cols, chunk) for chunk in _chunks(structures, 4 * workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(worker, jobs))


def _check_face_args(n, k, subspace, arrangement, check_gp):
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if subspace.ambient_dim != n:
        raise ValueError("subspace lives in the wrong ambient dimension")
    if n > GP_MAX_DIM:
        raise UnsupportedSizeError(f"exhaustive face enumeration supports n <= {GP_MAX_DIM}")
    if check_gp and not general_position_check(subspace, arrangement):
        raise GeneralPositionError(f"subspace is not in general position for the {arrangement} arrangement")


def average_trivial_faces_B(
    n: int, k: int, subspace: SubspaceSpec, check_gp: bool = True, workers: int = 1
) -> FaceCountReport:
    """Average over all B_n chambers of the number of k-faces F with F & L = {0}."""
    _check_face_args(n, k, subspace, "B", check_gp)
    d = subspace.codim
    cols = [tuple(c) for c in zip(*_int_constraints(subspace))]
    structures = list(_block_structures(n, k))
    total = _weighted_sum(_b_weight_chunk, cols, structures, workers)
    return FaceCountReport(
        "B", n, k, d, subspace,
        Fraction(total, 2**n * factorial(n)),
        trivial_faces_b(n, k, d),
    )


def average_trivial_faces_A(
    n: int, k: int, subspace: SubspaceSpec, check_gp: bool = True, workers: int = 1
) -> FaceCountReport:
    """Average over all A_{n-1} chambers of the number of k-faces F with F & L = {0}."""
    _check_face_args(n, k, subspace, "A", check_gp)
    d = subspace.codim
    cols = [tuple(c) for c in zip(*_int_constraints(subspace))]
    structures = list(_ordered_partitions(range(n), k))
    total = _weighted_sum(_a_weight_chunk, cols, structures, workers)
    return FaceCountReport(
        "A", n, k, d, subspace,
        Fraction(total, factorial(n)),
        trivial_faces_a(n, k, d),
    )


def random_gp_subspace(
    n: int, d: int, arrangement: str, seed: int, bound: int = 10**6, max_draws: int = 100
) -> SubspaceSpec:
    """Kernel of a random integer ``d x n`` matrix, redrawn until it is in general position."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        mat = rng.integers(-bound, bound + 1, size=(d, n)).tolist()
        if matrix_rank(mat) != d:
            continue
        candidate = SubspaceSpec(mat)
        if general_position_check(candidate, arrangement):
            return candidate
    raise GeneralPositionError(f"no general-position subspace found in {max_draws} draws")


def _exact_rows(path_points) -> list[list[Fraction]]:
    return [[as_fraction(v) for v in row] for row in path_points]


def certify_general_position(points: Sequence[Sequence[Fraction]]) -> bool:
    """Every min(d, m)-subset of the points is linearly independent."""
    if not points:
        return True
    d = len(points[0])
    size = min(d, len(points))
    return all(matrix_rank([points[i] for i in sub]) == size
               for sub in itertools.combinations(range(len(points)), size))


def walk_face_equivalence(increments, k: int, check_gp: bool = True) -> EquivalenceResult:
    """Both sides of the walk/face correspondence for one exact path.

    Left: k-tuples of partial sums whose hull contains the origin.  Right:
    k-faces of ``{b_1 >= ... >= b_n >= 0}`` meeting ``ker A`` nontrivially,
    where ``A`` has the increments as columns.
    """
    x = _exact_rows(increments)
    n = len(x)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    d = len(x[0])
    sums = [list(itertools.accumulate(col)) for col in zip(*x)]
    s = [[sums[r][i] for r in range(d)] for i in range(n)]
    if check_gp:
        if n > GP_MAX_DIM:
            raise UnsupportedSizeError(f"path certification supports n <= {GP_MAX_DIM}")
        if not certify_general_position(s):
            raise GeneralPositionError("partial sums are not in general position")

    absorbed = sum(origin_in_hull([s[i] for i in tup]) for tup in itertools.combinations(range(n), k))

    nontrivial = 0
    for cuts in itertools.combinations(range(1, n + 1), k):
        starts = (0,) + cuts[:-1]
        blocks = tuple(tuple(range(a, b)) for a, b in zip(starts, cuts))
        mat = [[sum(x[i][r] for i in block) for block in blocks] for r in range(d)]
        if not cone_meets_subspace_trivially("B", mat):
            nontrivial += 1
    return EquivalenceResult(absorbed, nontrivial)


def bridge_face_equivalence(increments, k: int, check_gp: bool = True) -> EquivalenceResult:
    """Both sides of the bridge/face correspondence for one exact bridge.

    Left: k-tuples among ``S_1..S_{n-1}`` whose hull contains the origin.
    Right: (k+1)-faces of ``{b_1 >= ... >= b_n}`` meeting
    ``{sum b = 0} & ker A`` nontrivially.
    """
    x = _exact_rows(increments)
    n = len(x)
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    d = len(x[0])
    if any(sum(col) != 0 for col in zip(*x)):
        raise ValueError("bridge increments must sum to zero")
    sums = [list(itertools.accumulate(col)) for col in zip(*x)]
    s = [[sums[r][i] for r in range(d)] for i in range(n - 1)]
    if check_gp:
        if n > GP_MAX_DIM:
            raise UnsupportedSizeError(f"path certification supports n <= {GP_MAX_DIM}")
        if not certify_general_position(s):
            raise GeneralPositionError("bridge partial sums are not in general position")

    absorbed = sum(origin_in_hull([s[i] for i in tup]) for tup in itertools.combinations(range(n - 1), k))

    nontrivial = 0
    for cuts in itertools.combinations(range(1, n), k):
        bounds = (0,) + cuts + (n,)
        blocks = [range(a, b) for a, b in zip(bounds[:-1], bounds[1:])]
        mat = [[sum(x[i][r] for i in block) for block in blocks] for r in range(d)]
        mat.append([len(block) for block in blocks])
        if not cone_meets_subspace_trivially("A", mat):
            nontrivial += 1
    return EquivalenceResult(absorbed, nontrivial)


def _normal_as_ints(normal) -> list[int]:
    return integer_row([as_fraction(v) for v in normal])


def validate_normal(normal) -> list[int]:
    """Integer rescaling of a normal that is orthogonal to no nonzero {-1,0,1} vector."""
    a = _normal_as_ints(normal)
    n = len(a)
    if n == 0:
        raise ValueError("normal must be non-empty")
    # signed subset sums; the all-zero choice is excluded
    sums = {0: 1}
    for v in a:
        nxt: dict = {}
        for s, cnt in sums.items():
            for t in (s - v, s, s + v):
                nxt[t] = nxt.get(t, 0) + cnt
        sums = nxt
    if sums.get(0, 0) > 1:
        raise DegenerateNormalError("normal is orthogonal to a chamber vertex")
    return a


def chamber_vertex_count(chamber: ChamberB, normal) -> int:
    """Number of nonzero vertices of ``chamber & [-1,1]^n`` on the positive side of ``normal``.

    >>> chamber_vertex_count(ChamberB((1, 1), (0, 1)), (1, 2))
    2
    """
    a = [as_fraction(v) for v in normal]
    if len(a) != chamber.n:
        raise ValueError("normal has the wrong dimension")
    count = 0
    acc = Fraction(0)
    for e, s in zip(chamber.eps, chamber.sigma):
        acc += e * a[s]
        if acc == 0:
            raise DegenerateNormalError("a chamber vertex lies on the hyperplane")
        count += acc > 0
    return count


def default_normal(n: int) -> list[int]:
    """Powers of two: every nonzero signed subset sum is nonzero."""
    return [2**i for i in range(n)]


@dataclass(frozen=True)
class VertexDistribution:
    n: int
    trials: int
    seed: int
    normal: tuple[int, ...]
    counts: tuple[int, ...]
    target: tuple[Fraction, ...]

    @property
    def pmf(self) -> list[float]:
        return [c / self.trials for c in self.counts]

    @property
    def std_errors(self) -> list[float]:
        return [float(np.sqrt(p * (1 - p) / self.trials)) for p in self.pmf]

    @property
    def tv_distance(self) -> float:
        gap = sum(abs(Fraction(c, self.trials) - t) for c, t in zip(self.counts, self.target))
        return float(gap / 2)


def corollary_vertex_distribution(n: int, trials: int, seed: int, normal=None) -> VertexDistribution:
    """Empirical law of the vertex count over uniformly sampled B_n chambers."""
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    a = validate_normal(default_normal(n) if normal is None else normal)
    if len(a) != n:
        raise ValueError("normal has the wrong dimension")
    if sum(abs(v) for v in a) >= 2**62:
        raise ValueError("normal entries too large for int64 accumulation")
    rng = np.random.default_rng(seed)
    counts = np.zeros(n + 1, dtype=np.int64)
    avec = np.asarray(a, dtype=np.int64)
    block = 1 << 16
    done = 0
    while done < trials:
        size = min(block, trials - done)
        perms = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
        signs = rng.integers(0, 2, size=(size, n), dtype=np.int64) * 2 - 1
        partial = np.cumsum(signs * avec[perms], axis=1)
        counts += np.bincount((partial > 0).sum(axis=1), minlength=n + 1)
        done += size
    return VertexDistribution(n, trials, seed, tuple(a), tuple(int(c) for c in counts), tuple(arcsine_pmf(n)))
