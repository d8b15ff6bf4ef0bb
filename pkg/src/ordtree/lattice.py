"""Lattice-point counting and exact quasipolynomials.

Counting is done by direct enumeration: right simplices by summing over the
last coordinate, parametric inequality systems by nested interval
propagation. Quasipolynomials carry exact :class:`fractions.Fraction`
coefficients; fitting is per-residue Lagrange interpolation followed by
validation on every remaining sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from ordtree.errors import (
    BadRange,
    InconsistentSamples,
    InsufficientSamples,
    IntegralityViolation,
    UnboundedSystem,
)

# -- quasipolynomials ---------------------------------------------------------


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Product of two coefficient lists (lowest degree first)."""
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_eval(p: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class QuasiPolynomial:
    """Q(t) = sum_j coeffs[t mod period][j] * t**j.

    A row of ``None`` marks a residue class on which Q is not defined (for
    instance residues sharing a factor with a fixed generator).
    """

    degree: int
    period: int
    coeffs: tuple[tuple[Fraction, ...] | None, ...]

    def __post_init__(self):
        if self.period < 1 or len(self.coeffs) != self.period:
            raise BadRange("need exactly one coefficient row per residue")
        rows = [r for r in self.coeffs if r is not None]
        if any(len(r) != self.degree + 1 for r in rows):
            raise BadRange(f"rows must have {self.degree + 1} coefficients")
        if self.degree > 0 and rows and all(r[-1] == 0 for r in rows):
            raise BadRange("leading coefficient vanishes on every residue")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence | None]) -> QuasiPolynomial:
        """Build from coefficient rows, trimming degrees that vanish everywhere."""
        rows = [None if r is None else [Fraction(c) for c in r] for r in rows]
        defined = [r for r in rows if r is not None]
        width = max((len(r) for r in defined), default=1)
        for r in defined:
            r.extend([Fraction(0)] * (width - len(r)))
        while width > 1 and all(r[width - 1] == 0 for r in defined):
            width -= 1
        coeffs = tuple(None if r is None else tuple(r[:width]) for r in rows)
        return cls(width - 1, len(rows), coeffs)

    def row(self, t: int) -> tuple[Fraction, ...]:
        r = self.coeffs[t % self.period]
        if r is None:
            raise BadRange(f"quasipolynomial undefined on residue {t % self.period} mod {self.period}")
        return r

    def __call__(self, t: int) -> Fraction:
        return poly_eval(self.row(t), t)

    def reduced(self) -> QuasiPolynomial:
        """Same function with the least period whose rows agree."""
        for p in range(1, self.period + 1):
            if self.period % p:
                continue
            rows: list = [None] * p
            ok = True
            for rho, r in enumerate(self.coeffs):
                if r is None:
                    continue
                prev = rows[rho % p]
                if prev is None:
                    rows[rho % p] = r
                elif prev != r:
                    ok = False
                    break
            if ok:
                return QuasiPolynomial(self.degree, p, tuple(rows))
        return self

    def format_row(self, rho: int, var: str = "t") -> str:
        r = self.coeffs[rho]
        if r is None:
            return "undefined"
        terms = []
        for j in range(len(r) - 1, -1, -1):
            c = r[j]
            if c == 0:
                continue
            mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
            mag = _fmt(abs(c))
            body = mag if not mono else (mono if abs(c) == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return "\n".join(
            f"t = {rho} (mod {self.period}): {self.format_row(rho)}"
            for rho in range(self.period)
        )


def eval_quasipolynomial(Q: QuasiPolynomial, t: int, counting: bool = True) -> Fraction | int:
    """Evaluate Q at t; counting quasipolynomials must give nonnegative integers."""
    if t < 0:
        raise BadRange("t must be nonnegative")
    value = Q(t)
    if counting:
        if value.denominator != 1 or value < 0:
            raise IntegralityViolation(f"Q({t}) = {value} is not a count")
        return int(value)
    return value


def _interpolate(points: Sequence[tuple[int, Fraction]]) -> list[Fraction]:
    """Coefficients (lowest first) of the polynomial through ``points``."""
    n = len(points)
    out = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            out[k] += c * scale
    return out


@dataclass
class FitReport:
    """Outcome of a fit: the quasipolynomial plus how far back it is valid.

    ``validated_from`` is the least t such that every sample at or above t
    agrees; ``first_mismatch`` the largest disagreeing sample (None when all
    samples agree).
    """

    quasipolynomial: QuasiPolynomial
    validated_from: int
    first_mismatch: int | None = None
    mismatches: list[int] = field(default_factory=list)


def fit_with_report(
    samples: Iterable[tuple[int, int | Fraction]],
    degree: int,
    period: int,
    residues: Iterable[int] | None = None,
) -> FitReport:
    """Interpolate each residue class at its ``degree + 1`` largest arguments.

    Residue classes not listed in ``residues`` (default: all) are left
    undefined.
    """
    if degree < 0 or period < 1:
        raise BadRange("degree must be >= 0 and period >= 1")
    wanted = set(range(period)) if residues is None else {r % period for r in residues}
    by_class: dict[int, dict[int, Fraction]] = {rho: {} for rho in wanted}
    for t, v in samples:
        if t % period in wanted:
            by_class[t % period][t] = Fraction(v)
    rows: list = [None] * period
    mismatches = []
    for rho in sorted(wanted):
        pts = sorted(by_class[rho].items())
        if len(pts) < degree + 2:
            raise InsufficientSamples(
                f"residue {rho} mod {period} has {len(pts)} samples, need {degree + 2}"
            )
        coeffs = _interpolate(pts[-(degree + 1):])
        rows[rho] = coeffs
        for t, v in pts[: -(degree + 1)]:
            if poly_eval(coeffs, t) != v:
                mismatches.append(t)
    Q = QuasiPolynomial.from_rows(rows)
    all_t = sorted(t for cls in by_class.values() for t in cls)
    if mismatches:
        worst = max(mismatches)
        validated_from = min(t for t in all_t if t > worst)
        return FitReport(Q, validated_from, worst, sorted(mismatches))
    return FitReport(Q, all_t[0] if all_t else 0)


def fit_quasipolynomial(
    samples: Iterable[tuple[int, int | Fraction]],
    degree: int,
    period: int,
    residues: Iterable[int] | None = None,
) -> QuasiPolynomial:
    """Exact fit that must reproduce every sample, else InconsistentSamples."""
    report = fit_with_report(samples, degree, period, residues)
    if report.first_mismatch is not None:
        raise InconsistentSamples(
            f"samples disagree with a degree-{degree} period-{period} fit "
            f"(largest mismatch at t={report.first_mismatch}, "
            f"consistent from t={report.validated_from})",
            first_mismatch=report.first_mismatch,
            validated_from=report.validated_from,
        )
    return report.quasipolynomial


# -- right simplices ----------------------------------------------------------


@dataclass(frozen=True)
class RightSimplex:
    """{x >= 0 integral : sum(w_i * x_i) <= bound}."""

    weights: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if any(w < 1 for w in self.weights):
            raise BadRange("weights must be positive")


@lru_cache(maxsize=None)
def _simplex(weights: tuple[int, ...], bound: int) -> int:
    if bound < 0:
        return 0
    if not weights:
        return 1
    if len(weights) == 1:
        return bound // weights[0] + 1
    *rest, last = weights
    rest = tuple(rest)
    return sum(_simplex(rest, bound - k * last) for k in range(bound // last + 1))


def count_right_simplex(simplex: RightSimplex) -> int:
    return _simplex(tuple(simplex.weights), simplex.bound)


# -- parametric inequality systems -------------------------------------------


@dataclass(frozen=True)
class Row:
    """sum(coeffs[i] * x_i) + coeff_g * g  (>= or ==)  const."""

    kind: str
    coeffs: tuple[int, ...]
    coeff_g: int
    const: int

    def __post_init__(self):
        if self.kind not in ("ge", "eq"):
            raise BadRange(f"row kind must be 'ge' or 'eq', not {self.kind!r}")


@dataclass(frozen=True)
class LinearSystem:
    """Integer system in ``dimension`` variables plus a grading variable g."""

    dimension: int
    rows: tuple[Row, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        for row in self.rows:
            if len(row.coeffs) != self.dimension:
                raise BadRange("row length does not match the dimension")

    @classmethod
    def build(cls, ge=(), eq=(), names=()) -> LinearSystem:
        """Rows given as ``(c_1, ..., c_d, c_g, k)`` tuples."""
        rows = [Row("ge", tuple(r[:-2]), r[-2], r[-1]) for r in ge]
        rows += [Row("eq", tuple(r[:-2]), r[-2], r[-1]) for r in eq]
        dims = {len(r.coeffs) for r in rows}
        if len(dims) != 1:
            raise BadRange("rows have inconsistent lengths")
        return cls(dims.pop(), tuple(rows), tuple(names))

    def constraints(self, g: int) -> list[tuple[tuple[int, ...], int]]:
        """Rows at fixed g as ``coeffs . x >= rhs`` (equalities split in two)."""
        out = []
        for row in self.rows:
            rhs = row.const - row.coeff_g * g
            out.append((row.coeffs, rhs))
            if row.kind == "eq":
                out.append((tuple(-c for c in row.coeffs), -rhs))
        return out

    def dumps(self) -> str:
        lines = []
        if self.names:
            lines.append("# vars: " + " ".join(self.names) + " | g")
        for row in self.rows:
            nums = [*row.coeffs, row.coeff_g, row.const]
            lines.append(row.kind + " " + " ".join(str(v) for v in nums))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> LinearSystem:
        """Parse the plain-text format.

        One row per line: ``ge c_1 ... c_d c_g k`` for
        ``c_1 x_1 + ... + c_d x_d + c_g g >= k`` or ``eq ...`` for equality.
        ``#`` starts a comment; a comment of the form ``# vars: a b | g``
        names the variables.
        """
        rows = []
        names: tuple[str, ...] = ()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line, _, comment = raw.partition("#")
            comment = comment.strip()
            if comment.startswith("vars:"):
                names = tuple(comment[5:].split("|")[0].split())
            tokens = line.split()
            if not tokens:
                continue
            kind, *nums = tokens
            if kind not in ("ge", "eq") or len(nums) < 3:
                raise BadRange(f"line {lineno}: cannot parse {raw!r}")
            try:
                vals = [int(v) for v in nums]
            except ValueError:
                raise BadRange(f"line {lineno}: non-integer entry in {raw!r}") from None
            rows.append(Row(kind, tuple(vals[:-2]), vals[-2], vals[-1]))
        if not rows:
            raise BadRange("system has no rows")
        dims = {len(r.coeffs) for r in rows}
        if len(dims) != 1:
            raise BadRange("rows have inconsistent lengths")
        dim = dims.pop()
        if names and len(names) != dim:
            names = ()
        return cls(dim, tuple(rows), names)

    @classmethod
    def load(cls, path: str | Path) -> LinearSystem:
        return cls.loads(Path(path).read_text(encoding="utf-8"))


_INF = float("inf")


def _propagate(cons, lo: list, hi: list, rounds: int = 64) -> bool:
    """Tighten integer bounds in place; False if some interval empties."""
    n = len(lo)
    for _ in range(rounds):
        changed = False
        for coeffs, rhs in cons:
            for i in range(n):
                ci = coeffs[i]
                if ci == 0:
                    continue
                rest = 0
                for j in range(n):
                    cj = coeffs[j]
                    if j == i or cj == 0:
                        continue
                    top = hi[j] if cj > 0 else lo[j]
                    if top in (_INF, -_INF):
                        rest = None
                        break
                    rest += cj * top
                if rest is None:
                    continue
                # ci * x_i >= rhs - rest
                need = rhs - rest
                if ci > 0:
                    new = -(-need // ci)
                    if new > lo[i]:
                        lo[i] = new
                        changed = True
                else:
                    # dividing by a negative flips the inequality; // floors
                    new = need // ci
                    if new < hi[i]:
                        hi[i] = new
                        changed = True
                if lo[i] > hi[i]:
                    return False
        if not changed:
            return True
    return True


def count_system(system: LinearSystem, g: int) -> int:
    """Integer points of the system at grading value ``g``.

    Variables are fixed one at a time in input order; before each choice the
    bounds are re-propagated through every row, and the last variable is
    counted as the length of its final interval.
    """
    cons = system.constraints(g)
    n = system.dimension
    lo = [-_INF] * n
    hi = [_INF] * n
    if not _propagate(cons, lo, hi):
        return 0
    for i in range(n):
        if lo[i] == -_INF or hi[i] == _INF:
            raise UnboundedSystem(f"variable {i} has no finite bounds at g={g}")

    def rec(i: int, lo: list, hi: list) -> int:
        if i == n - 1:
            return max(0, hi[i] - lo[i] + 1)
        total = 0
        for v in range(lo[i], hi[i] + 1):
            lo2 = lo.copy()
            hi2 = hi.copy()
            lo2[i] = hi2[i] = v
            if _propagate(cons, lo2, hi2):
                total += rec(i + 1, lo2, hi2)
        return total

    return rec(0, lo, hi)


def count_system_naive(system: LinearSystem, g: int, box: Sequence[tuple[int, int]]) -> int:
    """Check every point of an explicit box against every row."""
    cons = system.constraints(g)
    total = 0
    for x in product(*(range(a, b + 1) for a, b in box)):
        if all(sum(c * v for c, v in zip(coeffs, x)) >= rhs for coeffs, rhs in cons):
            total += 1
    return total


def bundled_system(name: str) -> LinearSystem:
    """One of the systems shipped in ``ordtree/data`` (e.g. ``"pstar"``)."""
    path = Path(__file__).parent / "data" / f"{name}.sys"
    return LinearSystem.load(path)
