"""Acceptance suite: one PASS/FAIL line per criterion in the terminal summary.

Runtimes are measured on the machine running the suite and are part of the
pass condition.
"""

import io
import json
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from arcsine_walks import combinatorics as cb
from arcsine_walks.cli import execute
from arcsine_walks.montecarlo import monte_carlo_expected_m, monte_carlo_nonabsorption
from arcsine_walks.walks import sample_bridge, sample_walk
from arcsine_walks.weyl import (
    average_trivial_faces_A,
    average_trivial_faces_B,
    bridge_face_equivalence,
    corollary_vertex_distribution,
    random_gp_subspace,
    walk_face_equivalence,
)


def test_exact_identity_suite(acceptance):
    start = time.perf_counter()
    failures = []
    for k in range(1, 26):
        row = cb.b_row(k)
        if not row.parity_sum(0) == row.parity_sum(1) == 2 ** (k - 1) * factorial(k):
            failures.append(("B parity", k))
    for m in range(2, 27):
        row = cb.stirling_row(m)
        if not row.parity_sum(0) == row.parity_sum(1) == factorial(m) // 2:
            failures.append(("Stirling parity", m))
    checked = 0
    for n in range(1, 26):
        for k in range(1, n + 1):
            for d in range(1, 7):
                walk = cb.expected_m_walk(n, k, d)
                if 2 * walk + cb.expected_containing_count(n, k, d) != comb(n, k):
                    failures.append(("complement", n, k, d))
                if walk != comb(n, k) * cb.expected_m_walk(k, k, d):
                    failures.append(("scaling", n, k, d))
                checked += 1
    seconds = time.perf_counter() - start
    ok = not failures and seconds < 5
    acceptance("1 exact identities", ok, f"{checked} (n,k,d) triples, {len(failures)} failures", seconds)
    assert ok, failures[:5]


def test_one_dimensional_cross_check(acceptance):
    start = time.perf_counter()
    failures = []
    for n in range(1, 21):
        pmf = cb.arcsine_pmf(n)
        for k in range(1, n + 1):
            direct = sum(p * comb(m, k) for m, p in enumerate(pmf))
            closed = Fraction(comb(2 * k, k) * comb(n, k), 4**k)
            if not cb.expected_m_walk(n, k, 1) == direct == closed:
                failures.append(("walk", n, k))
        if n >= 2:
            upmf = cb.uniform_bridge_pmf(n)
            for k in range(1, n):
                direct = sum(p * comb(m, k) for m, p in enumerate(upmf))
                if not cb.expected_m_bridge(n, k, 1) == direct == Fraction(comb(n - 1, k), k + 1):
                    failures.append(("bridge", n, k))
    seconds = time.perf_counter() - start
    ok = not failures and seconds < 5
    acceptance("2 one-dimensional cross-check", ok, f"n <= 20, {len(failures)} failures", seconds)
    assert ok, failures[:5]


def _theorem_b_full(n, d):
    row = cb.b_row(n)
    return Fraction(2 * sum(row[j] for j in range(d - 1, -1, -2)), 2**n * factorial(n))


def _theorem_a_full(n, d):
    row = cb.stirling_row(n)
    return Fraction(2 * sum(row[j] for j in range(d - 1, -1, -2)), factorial(n))


def test_exhaustive_weyl_verification(acceptance):
    start = time.perf_counter()
    failures, k_one = [], []
    cases = 0
    for n in range(1, 6):
        for d in range(1, n + 1):
            s = random_gp_subspace(n, d, "B", seed=100 * n + d)
            for k in range(1, n + 1):
                rep = average_trivial_faces_B(n, k, s, check_gp=False)
                cases += 1
                if not rep.match:
                    failures.append(("B", n, k, d))
                if k == n and rep.average_trivial != _theorem_b_full(n, d):
                    failures.append(("B full", n, d))
    for n in range(1, 7):
        for d in range(1, n + 1):
            s = random_gp_subspace(n, d, "A", seed=100 * n + d)
            for k in range(1, n + 1):
                rep = average_trivial_faces_A(n, k, s, check_gp=False)
                cases += 1
                if k == 1:
                    # one face per chamber, the diagonal line, always met trivially
                    if rep.average_trivial != 1:
                        failures.append(("A k=1 exhaustive", n, d))
                    if not rep.match:
                        k_one.append((n, d))
                elif not rep.match:
                    failures.append(("A", n, k, d))
                if k == n and n >= 2 and rep.average_trivial != _theorem_a_full(n, d):
                    failures.append(("A full", n, d))
    seconds = time.perf_counter() - start
    ok = not failures and seconds < 120
    acceptance("3 exhaustive Weyl verification (B all k; A 2 <= k <= n; k = n full-chamber forms)", ok,
               f"{cases} cases, {len(failures)} failures", seconds)
    acceptance("3 A-type closed form at k = 1, as literally stated", not k_one,
               f"{len(k_one)} of 21 (n, d) pairs differ: exhaustive average is 1, closed form gives 0 or 2", seconds)
    assert ok, failures[:5]


@pytest.mark.xfail(strict=True, reason="the A-type closed form does not cover k = 1 (see decisions ledger)")
def test_a_type_closed_form_at_k_one_literal():
    s = random_gp_subspace(4, 2, "A", seed=402)
    assert average_trivial_faces_A(4, 1, s).match


def test_lemma_equivalence(acceptance):
    start = time.perf_counter()
    bad_walk = bad_bridge = checks = 0
    for i in range(100):
        n, d = 2 + i % 6, 1 + i % 3
        inc = sample_walk(n, d, "gaussian", 1000 + i, exact_bits=20).increments.tolist()
        for k in range(1, n + 1):
            checks += 1
            bad_walk += not walk_face_equivalence(inc, k).equal
        inc = sample_bridge(n, d, "gaussian", 2000 + i, exact_bits=20).increments.tolist()
        for k in range(1, n):
            checks += 1
            bad_bridge += not bridge_face_equivalence(inc, k).equal
    seconds = time.perf_counter() - start
    ok = bad_walk == bad_bridge == 0 and seconds < 120
    acceptance("4 lemma equivalence", ok,
               f"100 walks + 100 bridges, n <= 7, {checks} checks, {bad_walk + bad_bridge} unequal", seconds)
    assert ok


def test_monte_carlo_vs_closed_form(acceptance):
    start = time.perf_counter()
    details, ok = [], True
    runs = [
        (False, "gaussian", cb.expected_m_walk(6, 3, 2)),
        (False, "cauchy", cb.expected_m_walk(6, 3, 2)),
        (True, "gaussian", cb.expected_m_bridge(6, 3, 2)),
        (True, "cauchy", cb.expected_m_bridge(6, 3, 2)),
    ]
    for bridge, dist, target in runs:
        est = monte_carlo_expected_m(6, 3, 2, dist, 100_000, seed=1, workers=4, bridge=bridge)
        z = est.z_score(target)
        ok &= abs(z) <= 4
        details.append(f"{'bridge' if bridge else 'walk'}/{dist} z={z:+.2f}")
    est = monte_carlo_nonabsorption(3, 2, "gaussian", 100_000, seed=1, workers=4)
    z = est.z_score(Fraction(23, 24))
    ok &= abs(z) <= 4
    details.append(f"nonabsorption z={z:+.2f}")
    seconds = time.perf_counter() - start
    ok = ok and seconds < 60
    acceptance("5 Monte Carlo vs closed form", ok, ", ".join(details), seconds)
    assert ok


def test_corollary_experiment(acceptance):
    start = time.perf_counter()
    dist = corollary_vertex_distribution(8, 100_000, seed=1)
    seconds = time.perf_counter() - start
    ok = dist.tv_distance < 0.02 and seconds < 30
    acceptance("6 vertex-count law vs arcsine(8)", ok, f"TV = {dist.tv_distance:.5f}", seconds)
    assert ok


def test_finite_n_limit_trend(acceptance):
    start = time.perf_counter()
    n = 10_000
    worst = 0.0
    for k in range(1, 5):
        walk = factorial(k) * cb.expected_m_walk(n, k, 1) / Fraction(n) ** k
        bridge = factorial(k) * cb.expected_m_bridge(n, k, 1) / Fraction(n) ** k
        worst = max(worst,
                    abs(float(walk / Fraction(comb(2 * k, k), 4**k)) - 1),
                    abs(float(bridge * (k + 1)) - 1))
    seconds = time.perf_counter() - start
    ok = worst < 0.01
    acceptance("7 finite-n limit trend", ok, f"n = 10^4, k <= 4, worst relative gap {worst:.2e}", seconds)
    assert ok


def _cli_mean(argv):
    out = io.StringIO()
    assert execute(argv + ["--stable"], out=out) == 0
    return json.loads(out.getvalue())["result"]["mean"]


def test_reproducibility(acceptance):
    start = time.perf_counter()
    ok = True
    for what, dist in (("walk", "gaussian"), ("bridge", "cauchy")):
        base = ["mc", what, "--n", "6", "--k", "3", "--d", "2", "--dist", dist, "--trials", "20000", "--seed", "11"]
        means = [_cli_mean(base + ["--workers", w]) for w in ("1", "1", "4", "4")]
        ok &= len({m.hex() for m in means}) == 1
    seconds = time.perf_counter() - start
    acceptance("8 reproducibility across workers {1, 4}", ok, "mc walk and mc bridge, means bit-identical", seconds)
    assert ok
