import itertools
from fractions import Fraction
from math import comb, factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from arcsine_walks import combinatorics as cb


def brute_b(k, j):
    # coefficient of t^j in prod (t + 2i - 1): sum over (k-j)-subsets of the constants
    consts = [2 * i - 1 for i in range(1, k + 1)]
    if not 0 <= j <= k:
        return 0
    return sum(prod(c) for c in itertools.combinations(consts, k - j))


def cycles(perm):
    seen, count = set(), 0
    for i in range(len(perm)):
        if i not in seen:
            count += 1
            while i not in seen:
                seen.add(i)
                i = perm[i]
    return count


def brute_stirling(m, j):
    return sum(1 for p in itertools.permutations(range(m)) if cycles(p) == j)


def test_b_row_examples():
    assert list(cb.b_row(1)) == [1, 1]
    assert list(cb.b_row(2)) == [3, 4, 1]
    assert list(cb.b_row(3)) == [15, 23, 9, 1]


def test_stirling_row_examples():
    assert list(cb.stirling_row(2)) == [0, 1, 1]
    assert list(cb.stirling_row(3)) == [0, 2, 3, 1]
    assert list(cb.stirling_row(4)) == [0, 6, 11, 6, 1]


@pytest.mark.parametrize("k", range(1, 9))
def test_b_row_against_subset_products(k):
    row = cb.b_row(k)
    assert [row[j] for j in range(-2, k + 3)] == [brute_b(k, j) for j in range(-2, k + 3)]


@pytest.mark.parametrize("m", range(1, 8))
def test_stirling_counts_permutations_by_cycles(m):
    row = cb.stirling_row(m)
    assert [row[j] for j in range(m + 2)] == [brute_stirling(m, j) for j in range(m + 2)]


def test_rows_out_of_range_read_zero():
    assert cb.b_row(3)[-1] == 0 and cb.b_row(3)[4] == 0
    assert cb.stirling_row(3)[7] == 0


def test_row_parity_sums():
    for k in range(1, 31):
        row = cb.b_row(k)
        assert row.parity_sum(0) == row.parity_sum(1) == 2 ** (k - 1) * factorial(k)
    for m in range(2, 31):
        row = cb.stirling_row(m)
        assert row.parity_sum(0) == row.parity_sum(1) == factorial(m) // 2


def test_bad_arguments_raise():
    with pytest.raises(ValueError):
        cb.b_row(0)
    with pytest.raises(ValueError):
        cb.expected_m_walk(2, 3, 1)
    with pytest.raises(ValueError):
        cb.expected_m_bridge(3, 3, 1)
    with pytest.raises(ValueError):
        cb.expected_m_walk(3, 2, 0)


def test_expected_m_walk_examples():
    assert cb.expected_m_walk(4, 2, 1) == Fraction(9, 4)
    assert cb.expected_m_walk(6, 3, 2) == Fraction(115, 12)
    assert cb.expected_m_walk(5, 2, 3) == 5


def test_expected_m_bridge_examples():
    assert cb.expected_m_bridge(4, 2, 1) == 1
    assert cb.expected_m_bridge(6, 3, 2) == Fraction(55, 12)
    assert cb.expected_m_bridge(5, 2, 3) == 3


def test_containing_examples():
    assert cb.expected_containing_count(5, 2, 3) == 0
    assert cb.expected_containing_count(6, 3, 2) == Fraction(5, 6)
    assert cb.expected_containing_count(4, 2, 1) == Fraction(3, 2)


def test_nonabsorption_examples():
    assert cb.nonabsorption_walk(2, 1) == Fraction(3, 4)
    assert cb.nonabsorption_walk(3, 2) == Fraction(23, 24)
    assert cb.nonabsorption_walk(2, 3) == 1
    assert cb.nonabsorption_bridge(3, 1) == Fraction(2, 3)
    assert cb.nonabsorption_bridge(4, 2) == Fraction(11, 12)
    assert cb.nonabsorption_bridge(3, 2) == 1


def test_pmf_examples():
    assert cb.arcsine_pmf(1) == [Fraction(1, 2)] * 2
    assert cb.arcsine_pmf(2) == [Fraction(3, 8), Fraction(1, 4), Fraction(3, 8)]
    assert cb.uniform_bridge_pmf(3) == [Fraction(1, 3)] * 3
    assert cb.uniform_bridge_pmf(2) == [Fraction(1, 2)] * 2
    assert cb.factorial_moment(cb.uniform_bridge_pmf(4), 2) == 1


def test_limit_moment_examples():
    assert cb.limit_moment_walk(2, 1) == Fraction(3, 8)
    assert cb.limit_moment_walk(1, 1) == Fraction(1, 2)
    assert cb.limit_moment_walk(3, 2) == Fraction(23, 48)


def test_arcsine_pmf_normalised_and_symmetric():
    for n in range(1, 40):
        pmf = cb.arcsine_pmf(n)
        assert sum(pmf) == 1
        assert pmf == pmf[::-1]


def test_nonabsorption_is_full_tuple_case():
    for n in range(1, 12):
        for d in range(1, 5):
            assert cb.nonabsorption_walk(n, d) == 2 * cb.expected_m_walk(n, n, d)
            if n >= 2:
                assert cb.nonabsorption_bridge(n, d) == 2 * cb.expected_m_bridge(n, n - 1, d)


def test_one_dim_walk_matches_arcsine_moments():
    # a d=1 path has 2M = C(N,k) + C(n-N,k) with N arcsine distributed
    for n in range(1, 16):
        pmf = cb.arcsine_pmf(n)
        for k in range(1, n + 1):
            direct = sum(p * (comb(m, k) + comb(n - m, k)) for m, p in enumerate(pmf)) / 2
            assert cb.expected_m_walk(n, k, 1) == direct
            assert cb.expected_m_walk(n, k, 1) == cb.factorial_moment(pmf, k)


def test_one_dim_bridge_matches_uniform_law():
    for n in range(2, 16):
        pmf = cb.uniform_bridge_pmf(n)
        for k in range(1, n):
            assert cb.expected_m_bridge(n, k, 1) == cb.factorial_moment(pmf, k)
            assert cb.expected_m_bridge(n, k, 1) == Fraction(comb(n - 1, k), k + 1)


def test_limit_moments_one_dim():
    for k in range(1, 10):
        assert cb.limit_moment_walk(k, 1) == Fraction(comb(2 * k, k), 4 ** k)
        assert cb.limit_moment_bridge(k, 1) == Fraction(1, k + 1)


def test_trivial_face_closed_forms():
    assert cb.trivial_faces_b(3, 2, 2) == 3
    assert cb.trivial_faces_a(3, 2, 1) == 0
    assert cb.trivial_faces_a(3, 3, 2) == Fraction(2, 3)
    assert cb.trivial_faces_a(4, 3, 2) == 2


def test_pushforward():
    out = cb.pushforward(cb.arcsine_pmf(2), lambda m: comb(m, 1) + comb(2 - m, 1))
    assert out == {2: 1}


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 25), st.integers(1, 25), st.integers(1, 8))
def test_walk_identities(n, k, d):
    if k > n:
        n, k = k, n
    walk = cb.expected_m_walk(n, k, d)
    assert 2 * walk + cb.expected_containing_count(n, k, d) == comb(n, k)
    assert walk == comb(n, k) * cb.expected_m_walk(k, k, d)
    assert 0 <= 2 * walk <= comb(n, k)
    if k <= d:
        assert 2 * walk == comb(n, k)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 25), st.integers(1, 24), st.integers(1, 8))
def test_bridge_identities(n, k, d):
    k = min(k, n - 1)
    bridge = cb.expected_m_bridge(n, k, d)
    assert 0 <= 2 * bridge <= comb(n - 1, k)
    assert bridge == comb(n - 1, k) * cb.expected_m_bridge(k + 1, k, d)
    if k + 1 <= d:
        assert 2 * bridge == comb(n - 1, k)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6))
def test_monotone_in_dimension(n, d):
    # a larger d can only make capturing the origin harder
    for k in range(1, n + 1):
        assert cb.expected_m_walk(n, k, d) <= cb.expected_m_walk(n, k, d + 1)


def test_polynomial_type():
    p = cb.IntPolynomial.one().times_linear(1).times_linear(3)
    assert [p[j] for j in range(3)] == [3, 4, 1]
    assert p(-1) == 0 and p(-3) == 0
    assert (p * cb.IntPolynomial.one())[1] == 4
