"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run under pytest (the lines are collected into the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

import conftest
from oracles import depth_of_gapset, gap_sets_of_genus
from ordtree import from_generators
from ordtree.families import (
    NG2_LEADING,
    PRINTED_Q_A,
    fit_q_a,
    n_g_1_formula,
    n_g_2_formula,
    ng2_quasipolynomial,
    supersym_r,
    supersym_spec,
)
from ordtree.lattice import fit_with_report
from ordtree.ordinarization import enumerate_genus, n_g_r_brute, ordinarization_number
from ordtree.verify import (
    EXTREMAL_EXCEPTIONS,
    gap_set_census,
    suite_barlow,
    suite_dim3,
    suite_extremal,
    suite_interval,
    suite_monotonicity,
    suite_pstar,
    suite_supersym,
    suite_tree,
    suite_twogen,
)


def report(number, ok, summary):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {summary}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def describe(checks):
    return "; ".join(f"{c.label} [{c.computed}/{c.expected}]" for c in checks)


def failures(checks):
    return [f"{c.label}: expected {c.expected}, got {c.computed} {c.detail}" for c in checks if not c.passed]


def test_criterion_1_n_g_1():
    start = time.perf_counter()
    bad = [g for g in range(1, 31) if n_g_1_formula(g) != n_g_r_brute(g, 1)]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(1, ok, f"n_{{g,1}} formula = brute force (tuples and tree), 1 <= g <= 30, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 60


def test_criterion_2_n_g_2():
    start = time.perf_counter()
    bad = [g for g in range(1, 31) if n_g_2_formula(g) != n_g_r_brute(g, 2)]
    elapsed = time.perf_counter() - start
    anchors = (n_g_2_formula(6), n_g_2_formula(7)) == (9, 19)
    # level sizes of T_6 and T_7 against the subset-of-gaps census
    census = gap_set_census(6) == [1, 12, 9, 1] and gap_set_census(7) == [1, 18, 19, 1]
    totals = sum(gap_set_census(6)) == 23 and sum(gap_set_census(7)) == 39
    ok = not bad and elapsed < 300 and anchors and census and totals
    report(2, ok, f"n_{{g,2}} formula = brute force, 1 <= g <= 30, {elapsed:.1f}s; n_{{6,2}}=9, n_{{7,2}}=19")
    assert not bad, bad
    assert elapsed < 300
    assert anchors and census and totals


def test_criterion_3_quasipolynomial_recovery():
    samples = [(g, n_g_r_brute(g, 2, "tuples")) for g in range(1, 73)]
    fit = fit_with_report(samples, 4, 12)
    Q, printed = fit.quasipolynomial, ng2_quasipolynomial()
    rows = [rho for rho in range(12) if Q.row(rho) == printed.row(rho)]
    leads = [rho for rho in range(12) if Q.row(rho)[-1] == NG2_LEADING]
    ok = len(rows) == 12 and len(leads) == 12 and (Q.degree, Q.period) == (4, 12)
    report(3, ok, f"fit on g in [1,72] matches {len(rows)}/12 rows, leading 11/384 on {len(leads)}/12")
    assert ok


def test_criterion_4_extremal_as_stated():
    """The literal claim: <2,2g+1> alone at depth floor(g/2) for every 1 <= g <= 14.

    It fails at g = 3 and g = 5, so the test is expected to fail.
    """
    floor_ok = all(ordinarization_number(from_generators((2, 2 * g + 1))) == g // 2 for g in range(1, 51))
    shared = {}
    for g in range(1, 15):
        target = from_generators((2, 2 * g + 1))
        deepest = [S for S in enumerate_genus(g) if ordinarization_number(S) == g // 2]
        if deepest != [target]:
            shared[g] = len(deepest)
    ok = floor_ok and not shared
    report(4, ok, f"r(<2,2g+1>) = floor(g/2) for g <= 50: {floor_ok}; unique at that depth for g <= 14: "
                  f"{'yes' if not shared else f'no, level sizes {shared}'}")
    if ok:
        return
    pytest.xfail(f"uniqueness fails: level sizes at depth floor(g/2) are {shared}")


def test_criterion_4_extremal_exceptions():
    """What does hold: the floor formula, the depth bound, and uniqueness outside g = 3, 5."""
    checks = suite_extremal(14)
    # the gap-set oracle sees the same shared levels for g <= 10
    oracle = {}
    for g in range(1, 11):
        deepest = [gaps for gaps in gap_sets_of_genus(g) if depth_of_gapset(gaps, g) == g // 2]
        if len(deepest) > 1:
            oracle[g] = len(deepest)
    expected = {g: 1 + len(others) for g, others in EXTREMAL_EXCEPTIONS.items()}
    assert oracle == expected == {3: 3, 5: 2}
    assert not failures(checks), failures(checks)


def test_criterion_5_two_generators():
    start = time.perf_counter()
    checks = suite_twogen(0, hi=60)
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in checks) and elapsed < 30
    report(5, ok, f"{describe(checks)}, {elapsed:.1f}s")
    assert not failures(checks), failures(checks)
    assert elapsed < 30


def test_criterion_6_q_a_tables():
    mismatched = []
    for a, rows in PRINTED_Q_A.items():
        Q = fit_q_a(a)
        defined = {rho for rho in range(Q.period) if Q.coeffs[rho] is not None}
        if defined != set(rows) or any(Q.row(rho) != row for rho, row in rows.items()):
            mismatched.append(a)
    ok = not mismatched and sorted(PRINTED_Q_A) == [2, 3, 4, 5, 6]
    report(6, ok, f"fitted Q_a equals the printed rows for a in 2..6, mismatches {mismatched}")
    assert ok


def test_criterion_7_supersymmetric():
    value = supersym_r(supersym_spec((3, 5, 7, 11)))
    checks = suite_supersym(0, limit=20000)
    ok = value == 228 and all(c.passed for c in checks)
    report(7, ok, f"r(<105,165,231,385>) = {value}; {describe(checks)}")
    assert value == 228
    assert not failures(checks), failures(checks)


def test_criterion_8_interval():
    start = time.perf_counter()
    checks = suite_interval(0, hi=100)
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in checks) and elapsed < 30
    report(8, ok, f"{describe(checks)}, {elapsed:.1f}s")
    assert not failures(checks), failures(checks)
    assert elapsed < 30


def test_criterion_9_tree_theorems():
    checks = suite_tree(12)
    witness = from_generators((7, 8, 10, 11, 12, 13))
    ok = all(c.passed for c in checks) and witness.genus == 7
    report(9, ok, describe(checks))
    assert witness.genus == 7
    assert not failures(checks), failures(checks)


def test_criterion_10_pstar():
    checks = suite_pstar(0)
    ok = all(c.passed for c in checks)
    report(10, ok, describe(checks[:1]))
    assert not failures(checks), failures(checks)


def test_criterion_11_barlow_popoviciu():
    checks = suite_barlow(0, hi=25)
    ok = all(c.passed for c in checks)
    report(11, ok, describe(checks))
    assert not failures(checks), failures(checks)


def test_criterion_12_substituted_asymptotics():
    ratios = []
    for a in range(40, 61):
        for b, c in combinations(range(a + 1, 61), 2):
            if gcd(a, b) == gcd(a, c) == gcd(b, c) == 1:
                r = supersym_r(supersym_spec((a, b, c)))
                ratios.append(Fraction(r, supersym_spec((a, b, c)).genus))
    worst = max(abs(q - Fraction(1, 6)) for q in ratios)
    checks = suite_dim3(0) + suite_monotonicity(13)
    ok = worst < Fraction(1, 50) and all(c.passed for c in checks)
    report(12, ok, f"{len(ratios)} triples, max |r/g - 1/6| = {float(worst):.4f} < 0.02; "
                   f"n_{{g,r}} <= n_{{g+1,r}} for g <= 13")
    assert worst < Fraction(1, 50)
    assert not failures(checks), failures(checks)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-rx"]))
