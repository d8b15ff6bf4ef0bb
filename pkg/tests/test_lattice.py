from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import lattice_points_by_series
from ordtree import (
    BadRange,
    InconsistentSamples,
    InsufficientSamples,
    IntegralityViolation,
    UnboundedSystem,
)
from ordtree.families import ng1_quasipolynomial, ng2_quasipolynomial
from ordtree.lattice import (
    LinearSystem,
    QuasiPolynomial,
    RightSimplex,
    bundled_system,
    count_right_simplex,
    count_system,
    eval_quasipolynomial,
    fit_quasipolynomial,
    fit_with_report,
)
from ordtree.ordinarization import n_g_r_brute

F = Fraction


def box_count(system, g, box):
    cons = system.constraints(g)
    return sum(
        all(sum(c * v for c, v in zip(coeffs, x)) >= rhs for coeffs, rhs in cons)
        for x in product(*(range(lo, hi + 1) for lo, hi in box))
    )


# -- right simplices ----------------------------------------------------------


def test_simplex_examples():
    assert count_right_simplex(RightSimplex((3, 7), 6)) == 3
    assert count_right_simplex(RightSimplex((2, 15), 7)) == 4
    for w in [(1,), (4, 9), (2, 3, 5, 7)]:
        assert count_right_simplex(RightSimplex(w, 0)) == 1
    with pytest.raises(BadRange):
        RightSimplex((0, 3), 4)


@given(st.lists(st.integers(1, 10), min_size=1, max_size=4), st.integers(0, 200))
def test_simplex_matches_series(weights, bound):
    assert count_right_simplex(RightSimplex(tuple(weights), bound)) == lattice_points_by_series(weights, bound)


@given(st.lists(st.integers(1, 10), min_size=1, max_size=3), st.integers(0, 40))
def test_simplex_matches_box(weights, bound):
    box = product(*(range(bound // w + 1) for w in weights))
    naive = sum(sum(w * x for w, x in zip(weights, p)) <= bound for p in box)
    assert count_right_simplex(RightSimplex(tuple(weights), bound)) == naive


# -- parametric systems -------------------------------------------------------


def test_bundled_counts():
    assert count_system(bundled_system("pstar"), 6) == 22
    assert count_system(bundled_system("infeasible"), 4) == 0
    assert count_system(bundled_system("ord1"), 7) == 21
    assert count_system(bundled_system("ord1_double"), 7) == 3


def test_ord1_difference_is_n_g_1():
    ord1, double = bundled_system("ord1"), bundled_system("ord1_double")
    for g in range(2, 31):
        assert count_system(ord1, g) - count_system(double, g) == n_g_r_brute(g, 1, "tuples")


@pytest.mark.parametrize(
    "name,box",
    [
        ("pstar", lambda g: [(g + 1, 2 * g - 1)] * 2 + [(1, g)] * 2),
        ("polyex", lambda g: [(g + 1, 2 * g - 1)] * 2 + [(1, g)] * 2),
        ("ord1", lambda g: [(1, 2 * g)] * 2),
        ("ord1_double", lambda g: [(1, 2 * g)] * 2),
        ("infeasible", lambda g: [(-3, 3)]),
    ],
)
def test_count_system_matches_box(name, box):
    system = bundled_system(name)
    top = 14 if system.dimension == 4 else 20
    for g in range(1, top + 1):
        assert count_system(system, g) == box_count(system, g, box(g))


def test_pstar_printed_quasipolynomial():
    system = bundled_system("pstar")
    c = F(11, 384)
    for g in range(2, 41):
        if g % 2 == 0:
            printed = c * (g - 2) * g * (g * g - F(6, 11) * g - F(8, 11))
        else:
            printed = c * (g - 1) * (g + 1) * (g * g - F(16, 11) * g - F(3, 11))
        assert count_system(system, g) == printed


def test_face_printed_quasipolynomial():
    forms = {
        0: lambda g: (g - 6) * g,
        1: lambda g: (g - 1) ** 2,
        2: lambda g: (g - 2) * (g + 4),
        3: lambda g: (g - 3) ** 2,
        4: lambda g: (g - 4) * (g + 2),
        5: lambda g: (g + 1) ** 2,
    }
    system = bundled_system("polyex")
    for g in range(1, 31):
        assert count_system(system, g) == F(forms[g % 6](g), 36)


def test_unbounded_system():
    system = LinearSystem.build(ge=[(1, 0, 0)])
    with pytest.raises(UnboundedSystem):
        count_system(system, 3)


def test_system_text_round_trip(tmp_path):
    for name in ("pstar", "polyex", "ord1", "ord1_double", "infeasible"):
        system = bundled_system(name)
        again = LinearSystem.loads(system.dumps())
        assert again.rows == system.rows and again.dimension == system.dimension
    path = tmp_path / "s.sys"
    path.write_text("# vars: x | g\nge 1 0 0   # x >= 0\nge -1 1 0\n\n")
    loaded = LinearSystem.load(path)
    assert loaded.names == ("x",)
    assert [count_system(loaded, g) for g in range(4)] == [1, 2, 3, 4]


@pytest.mark.parametrize("text", ["", "ge 1 2", "le 1 0 0", "ge 1 x 0", "ge 1 0 0\nge 1 1 0 0"])
def test_system_parse_errors(text):
    with pytest.raises(BadRange):
        LinearSystem.loads(text)


# -- quasipolynomials ---------------------------------------------------------


def test_fit_n_g_1():
    samples = [(g, n_g_r_brute(g, 1)) for g in range(1, 11)]
    Q = fit_quasipolynomial(samples, 2, 2)
    assert Q.row(0) == (0, F(-1, 4), F(3, 8))
    assert Q.row(1) == (F(-3, 8), 0, F(3, 8))
    assert Q == ng1_quasipolynomial()


def test_fit_constant():
    Q = fit_quasipolynomial([(t, 5) for t in range(4)], 0, 1)
    assert Q.degree == 0 and Q.row(0) == (5,)
    assert eval_quasipolynomial(Q, 100) == 5


def test_fit_trims_degree():
    Q = fit_quasipolynomial([(t, 2 * t + 1) for t in range(8)], 3, 1)
    assert Q.degree == 1 and Q.row(0) == (1, 2)


def test_fit_errors():
    with pytest.raises(InsufficientSamples):
        fit_quasipolynomial([(0, 1), (1, 2)], 1, 1)
    squares = [(t, t * t) for t in range(10)]
    with pytest.raises(InconsistentSamples) as info:
        fit_quasipolynomial(squares, 1, 1)
    assert info.value.first_mismatch is not None


def test_fit_reports_preperiodic_window():
    # linear from t = 4 on, with noise below
    samples = [(t, 3 * t - 2 if t >= 4 else 100 + t) for t in range(12)]
    report = fit_with_report(samples, 1, 1)
    assert report.first_mismatch == 3 and report.validated_from == 4
    assert report.quasipolynomial.row(0) == (-2, 3)


def test_evaluation():
    assert eval_quasipolynomial(ng1_quasipolynomial(), 7) == 18
    assert eval_quasipolynomial(ng2_quasipolynomial(), 7) == 19
    half = QuasiPolynomial.from_rows([(F(1, 2),)])
    assert eval_quasipolynomial(half, 3, counting=False) == F(1, 2)
    with pytest.raises(IntegralityViolation):
        eval_quasipolynomial(half, 3)
    with pytest.raises(BadRange):
        eval_quasipolynomial(half, -1)


def test_undefined_rows():
    Q = QuasiPolynomial.from_rows([None, (F(0), F(1))])
    assert Q(3) == 3
    with pytest.raises(ValueError):
        Q(2)
    assert "undefined" in str(Q)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.integers(0, 3), st.integers(1, 4), st.data())
def test_fit_round_trip(degree, period, data):
    rows = [data.draw(st.lists(rationals, min_size=degree + 1, max_size=degree + 1)) for _ in range(period)]
    Q = QuasiPolynomial.from_rows(rows)
    samples = [(t, Q(t)) for t in range(period * (degree + 3))]
    fitted = fit_quasipolynomial(samples, degree, period)
    assert fitted == Q
    assert all(fitted(t) == v for t, v in samples)


def test_leading_coefficient_nonzero():
    Q = QuasiPolynomial.from_rows([(1, 0, 0), (2, 3, 0)])
    assert Q.degree == 1
    assert any(row[-1] != 0 for row in Q.coeffs)
