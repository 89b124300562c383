import itertools
import random
from fractions import Fraction

import pytest
import sympy

from arcsine_walks.linalg import as_fraction, integer_row, matmul, matrix_rank, transpose
from arcsine_walks.lp import is_feasible, phase1


def test_rank_examples():
    assert matrix_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2


def test_rank_against_sympy_and_transpose():
    rng = random.Random(3)
    for _ in range(300):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
        # force dependencies now and then
        if r > 1 and rng.random() < 0.5:
            m[-1] = [a + 2 * b for a, b in zip(m[0], m[1 % r])]
        assert matrix_rank(m) == sympy.Matrix(m).rank()
        assert matrix_rank(m) == matrix_rank(transpose(m))


def test_as_fraction_is_exact():
    assert as_fraction(0.1) == Fraction(3602879701896397, 36028797018963968)
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(ValueError):
        as_fraction(float("nan"))


def test_integer_row_keeps_direction():
    row = integer_row([Fraction(1, 2), Fraction(-1, 3), 0])
    assert row == [3, -2, 0]
    assert integer_row([4, 6]) == [4, 6]


def test_matmul():
    assert matmul([[1, 2]], [[3], [4]]) == [[11]]


def oracle_feasible(a, b):
    """Brute force over basic solutions: Ax=b, x>=0 is feasible iff a basic feasible point exists."""
    rows, cols = len(a), len(a[0])
    A = sympy.Matrix(a)
    B = sympy.Matrix(b)
    if all(v == 0 for v in b):
        return True
    for size in range(1, min(rows, cols) + 1):
        for subset in itertools.combinations(range(cols), size):
            sub = A[:, list(subset)]
            if sub.rank() != size:
                continue
            try:
                sol, params = sub.gauss_jordan_solve(B)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(v >= 0 for v in sol):
                return True
    return False


def test_phase1_against_basic_solution_oracle():
    rng = random.Random(11)
    for _ in range(250):
        rows, cols = rng.randint(1, 3), rng.randint(1, 5)
        a = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
        b = [rng.randint(-2, 2) for _ in range(rows)]
        res = phase1(a, b)
        assert res.feasible == oracle_feasible(a, b)
        if res.feasible:
            x = res.solution
            assert all(v >= 0 for v in x)
            assert [sum(Fraction(c) * v for c, v in zip(row, x)) for row in a] == [Fraction(v) for v in b]


def test_bland_rule_terminates_on_degenerate_instances():
    # many zero right-hand sides and repeated columns make ties the norm
    rng = random.Random(2024)
    for _ in range(1000):
        rows, cols = rng.randint(2, 5), rng.randint(2, 8)
        base = [[rng.choice((-1, 0, 0, 1, 2)) for _ in range(cols)] for _ in range(rows)]
        for j in range(1, cols):
            if rng.random() < 0.3:
                for r in base:
                    r[j] = r[j - 1]
        b = [rng.choice((0, 0, 0, 1)) for _ in range(rows)]
        res = phase1(base, b, max_pivots=10_000)
        assert res.pivots < 10_000
        assert res.feasible == is_feasible(base, b)


def test_phase1_accepts_floats_and_fractions():
    assert phase1([[0.5, -0.25]], [0]).feasible
    assert not phase1([[Fraction(1, 3), Fraction(2, 3)]], [-1]).feasible


def test_phase1_shape_errors():
    with pytest.raises(ValueError):
        phase1([[1, 2]], [1, 2])
    with pytest.raises(ValueError):
        phase1([[1, 2], [1]], [1, 2])
