"""Closed forms for counts and ordinarization numbers of special families.

Everything is evaluated in exact integer or rational arithmetic; each formula
has a brute-force counterpart elsewhere in the package (member scans through
:func:`r_by_member_scan`, tree counts through
:func:`ordtree.ordinarization.n_g_r_brute`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, prod
from typing import Sequence

from ordtree.errors import BadOrder, BadRange, GcdError, IntegralityViolation, NotPairwiseCoprime
from ordtree.lattice import QuasiPolynomial, fit_quasipolynomial, poly_eval, poly_mul
from ordtree.ordinarization import ordinarization_number
from ordtree.semigroup import from_generators


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise IntegralityViolation(f"{what} evaluated to {value}")
    return int(value)


def r_by_member_scan(gens: Sequence[int]) -> int:
    """Ordinarization number computed from the semigroup's membership table."""
    return ordinarization_number(from_generators(gens))


# -- fixed ordinarization number ----------------------------------------------


def n_g_1_formula(g: int) -> int:
    """Semigroups of genus g with ordinarization number 1."""
    if g < 0:
        raise BadRange("genus must be nonnegative")
    g2 = Fraction(3, 8) * g * g
    value = g2 - Fraction(g, 4) if g % 2 == 0 else g2 - Fraction(3, 8)
    return _as_count(value, f"n_{{{g},1}}")


def ng1_quasipolynomial() -> QuasiPolynomial:
    """n_{g,1} as a degree-2, period-2 quasipolynomial."""
    even = (Fraction(0), Fraction(-1, 4), Fraction(3, 8))
    odd = (Fraction(-3, 8), Fraction(0), Fraction(3, 8))
    return QuasiPolynomial.from_rows([even, odd])


# The twelve quartics f'_i = (384/11) f_i, each written as a product of the
# factors printed for it (highest degree first).
_NG2_FACTORS: dict[int, list[tuple[str, ...]]] = {
    0: [("1", "0"), ("1", "-2548/297", "336/11", "-1376/33")],
    1: [("1", "-1"), ("1", "-1927/297", "3611/297", "-541/297")],
    2: [("1", "-2"), ("1", "-1954/297", "5548/297", "-3352/297")],
    3: [("1", "-3"), ("1", "-1333/297", "449/99", "51/11")],
    4: [("1", "-2548/297", "3088/99", "-4192/99", "-512/297")],
    5: [("1", "-2224/297", "1910/99", "-1576/99", "-6499/297")],
    6: [("1", "-2548/297", "336/11", "-1520/33", "48")],
    7: [("1", "-2224/297", "1846/99", "-952/99", "-4643/297")],
    8: [("1", "-2548/297", "3152/99", "-4384/99", "-7552/297")],
    9: [("1", "-2224/297", "18", "-40/3", "39/11")],
    10: [("1", "-2548/297", "3088/99", "-4624/99", "13744/297")],
    11: [("1", "1"), ("1", "-2521/297", "8251/297", "-11683/297")],
}
NG2_LEADING = Fraction(11, 384)


def ng2_factors(residue: int) -> list[list[Fraction]]:
    """Printed factors of f'_residue as coefficient lists, lowest degree first."""
    return [[Fraction(c) for c in reversed(f)] for f in _NG2_FACTORS[residue]]


def ng2_expanded(residue: int) -> list[Fraction]:
    """f'_residue expanded, lowest degree first."""
    out = [Fraction(1)]
    for factor in ng2_factors(residue):
        out = poly_mul(out, factor)
    return out


def ng2_quasipolynomial() -> QuasiPolynomial:
    """n_{g,2} as a degree-4, period-12 quasipolynomial."""
    rows = [[NG2_LEADING * c for c in ng2_expanded(i)] for i in range(12)]
    return QuasiPolynomial.from_rows(rows)


def n_g_2_formula(g: int) -> int:
    """Semigroups of genus g with ordinarization number 2."""
    if g < 0:
        raise BadRange("genus must be nonnegative")
    value = NG2_LEADING * poly_eval(ng2_expanded(g % 12), g)
    return _as_count(value, f"n_{{{g},2}}")


# -- two generators -----------------------------------------------------------


def _check_pair(a: int, b: int) -> None:
    if a < 2 or b <= a:
        raise BadOrder(f"need 2 <= a < b, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise GcdError(f"gcd({a}, {b}) != 1")


def two_gen_genus(a: int, b: int) -> int:
    return (a - 1) * (b - 1) // 2


def r_two_gen(a: int, b: int) -> int:
    """r(<a, b>) by summing lattice points of the triangle row by row."""
    _check_pair(a, b)
    g = two_gen_genus(a, b)
    top = g // b
    return top + sum((g - n * b) // a for n in range(top + 1))


def r_two_gen_bounds(a: int, b: int) -> tuple[Fraction, Fraction]:
    """Interval that must contain r(<a, b>)."""
    _check_pair(a, b)
    center = Fraction(a * b - a - 4, 8)
    if a % 2:
        center -= Fraction(b + 3, 8 * a)
        width = Fraction(a, 4) - Fraction(1, 4 * a)
    else:
        width = Fraction(a, 4)
    return center, center + width


def q_a_period(a: int) -> int:
    return a if a % 2 else 2 * a


def fit_q_a(a: int, periods: int = 6) -> QuasiPolynomial:
    """Linear quasipolynomial Q_a with r(<a, b>) = Q_a(b), fitted from samples.

    Residues sharing a factor with ``a`` are left undefined.
    """
    if a < 2:
        raise BadRange("a must be at least 2")
    p = q_a_period(a)
    residues = [rho for rho in range(p) if gcd(rho, a) == 1]
    samples = [(b, r_two_gen(a, b)) for b in range(a + 1, a + periods * p + 1) if gcd(a, b) == 1]
    return fit_quasipolynomial(samples, 1, p, residues)


def _qa_row(c0: str, c1: str) -> tuple[Fraction, Fraction]:
    return (Fraction(c0), Fraction(c1))


# Published Q_a rows for small a, keyed by residue of b modulo the period
# (constant term first).
PRINTED_Q_A: dict[int, dict[int, tuple[Fraction, Fraction]]] = {
    2: {1: _qa_row("-1/4", "1/4"), 3: _qa_row("-3/4", "1/4")},
    3: {1: _qa_row("-1/3", "1/3"), 2: _qa_row("-2/3", "1/3")},
    4: {rho: _qa_row("-1/2", "1/2") for rho in (1, 3, 5, 7)},
    5: {
        1: _qa_row("-3/5", "3/5"),
        2: _qa_row("-1/5", "3/5"),
        3: _qa_row("-4/5", "3/5"),
        4: _qa_row("-2/5", "3/5"),
    },
    6: {
        1: _qa_row("-3/4", "3/4"),
        5: _qa_row("-3/4", "3/4"),
        7: _qa_row("-1/4", "3/4"),
        11: _qa_row("-1/4", "3/4"),
    },
}


def barlow_popoviciu(a: int, b: int, n: int) -> int:
    """Number of factorizations of n in <a, b> from the closed form."""
    _check_pair(a, b)
    if n < 0:
        raise BadRange("n must be nonnegative")
    b_inv = pow(b, -1, a)
    a_inv = pow(a, -1, b)

    def frac(x: Fraction) -> Fraction:
        return x - (x.numerator // x.denominator)

    value = Fraction(n, a * b) - frac(Fraction(b_inv * n, a)) - frac(Fraction(a_inv * n, b)) + 1
    return _as_count(value, f"factorizations of {n} in <{a}, {b}>")


# -- supersymmetric -----------------------------------------------------------


@dataclass(frozen=True)
class SupersymmetricSpec:
    """<q_1, ..., q_n> with q_i = A / a_i for pairwise coprime a_1 < ... < a_n."""

    factors: tuple[int, ...]

    @property
    def product(self) -> int:
        return prod(self.factors)

    @property
    def generators(self) -> tuple[int, ...]:
        A = self.product
        return tuple(A // a for a in self.factors)

    @property
    def frobenius(self) -> int:
        n = len(self.factors)
        return (n - 1) * self.product - sum(self.generators)

    @property
    def genus(self) -> int:
        return (1 + self.frobenius) // 2


def supersym_spec(factors: Sequence[int]) -> SupersymmetricSpec:
    factors = tuple(int(a) for a in factors)
    if len(factors) < 2:
        raise BadRange("need at least two factors")
    if factors[0] < 2 or any(x >= y for x, y in zip(factors, factors[1:])):
        raise BadOrder(f"factors must satisfy 2 <= a_1 < ... < a_n, got {factors}")
    for x, y in combinations(factors, 2):
        if gcd(x, y) != 1:
            raise NotPairwiseCoprime(f"gcd({x}, {y}) != 1")
    return SupersymmetricSpec(factors)


def supersym_factor_count(spec: SupersymmetricSpec, fact: Sequence[int]) -> int:
    """|Z(x)| for x with factorization ``fact`` over ``spec.generators``."""
    n = len(spec.factors)
    if len(fact) != n or any(c < 0 for c in fact):
        raise BadRange("factorization must be n nonnegative coefficients")
    trades = sum(c // a for c, a in zip(fact, spec.factors))
    return comb(n + trades - 1, n - 1)


def supersym_r(spec: SupersymmetricSpec, free: int | None = None) -> int:
    """Ordinarization number via normal-form factorizations.

    Every member has exactly one factorization whose coefficient on q_j is
    below a_j for all j except the ``free`` index; count those with value at
    most the genus. ``free`` defaults to the smallest generator (largest
    factor). The capped coefficients are looped over and the free one is
    counted in closed form, which gives the same sum as looping over the
    free coefficient first.
    """
    qs = spec.generators
    n = len(qs)
    if free is None:
        free = n - 1
    capped = sorted((j for j in range(n) if j != free), key=lambda j: qs[j])
    gens = [qs[j] for j in capped]
    caps = [spec.factors[j] - 1 for j in capped]
    q_free = qs[free]

    def count(level: int, rest: int) -> int:
        if level == len(gens):
            return rest // q_free + 1
        q = gens[level]
        top = min(rest // q, caps[level])
        return sum(count(level + 1, rest - k * q) for k in range(top + 1))

    return count(0, spec.genus) - 1


def dim3_ratio(a: int, b: int, c: int) -> Fraction:
    """r/g for the supersymmetric semigroup <bc, ac, ab>."""
    spec = supersym_spec((a, b, c))
    return Fraction(supersym_r(spec), spec.genus)


# -- intervals ----------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSpec:
    """<a, a+1, ..., a+x>."""

    a: int
    x: int

    @property
    def n(self) -> int:
        return -(-(self.a - 1) // self.x)

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(self.a, self.a + self.x + 1))

    @property
    def frobenius(self) -> int:
        return (self.n - 1) * self.a + self.a - 1

    @property
    def genus(self) -> int:
        n = self.n
        return n * self.a - n * (n - 1) * self.x // 2 - n


def interval_spec(a: int, x: int) -> IntervalSpec:
    if a < 2 or not 1 <= x <= a - 1:
        raise BadRange(f"need a >= 2 and 1 <= x <= a - 1, got ({a}, {x})")
    return IntervalSpec(a, x)


def interval_r(a: int, x: int) -> int:
    """r(<a, ..., a+x>); the ordinary case x = a - 1 gives 0."""
    spec = interval_spec(a, x)
    if x == a - 1:
        return 0
    n = spec.n
    if n % 2:
        value = Fraction((n * n - 1) * x, 8) + Fraction(n - 1, 2)
    else:
        value = Fraction(-n * (3 * n - 2) * x, 8) + Fraction(n * (a - 1), 2)
    return _as_count(value, f"r(<{a}..{a + x}>)")


# -- printed polytope counts --------------------------------------------------


def pstar_points_formula(g: int) -> int:
    """Integer points of P*(g) from its printed quasipolynomial (period 2)."""
    if g < 1:
        raise BadRange("g must be positive")
    c = Fraction(11, 384)
    if g % 2 == 0:
        value = c * (g - 2) * g * (g * g - Fraction(6, 11) * g - Fraction(8, 11))
    else:
        value = c * (g - 1) * (g + 1) * (g * g - Fraction(16, 11) * g - Fraction(3, 11))
    return _as_count(value, f"N*({g})")


_POLYEX_ROWS = {0: (-6, 0), 1: (-1, -1), 2: (-2, 4), 3: (-3, -3), 4: (-4, 2), 5: (1, 1)}


def polyex_points_formula(g: int) -> int:
    """Points of the P*(g) face with 2*b2 = b1 and a1 = b1 + b2 (period 6)."""
    if g < 1:
        raise BadRange("g must be positive")
    u, v = _POLYEX_ROWS[g % 6]
    return _as_count(Fraction((g + u) * (g + v), 36), f"face count at g={g}")
