"""Command-line front end.

Every command builds a :class:`RunReport`; the process exits with status 1
when any comparison in it failed and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from ordtree.errors import BadRange, SemigroupError
from ordtree.export import tree_to_dot, tree_to_json
from ordtree.families import (
    PRINTED_Q_A,
    fit_q_a,
    interval_r,
    interval_spec,
    n_g_1_formula,
    n_g_2_formula,
    ng1_quasipolynomial,
    ng2_quasipolynomial,
    pstar_points_formula,
    polyex_points_formula,
    q_a_period,
    r_by_member_scan,
    r_two_gen,
    r_two_gen_bounds,
    supersym_r,
    supersym_spec,
    two_gen_genus,
)
from ordtree.lattice import (
    LinearSystem,
    QuasiPolynomial,
    RightSimplex,
    bundled_system,
    count_right_simplex,
    count_system,
    fit_with_report,
)
from ordtree.ordinarization import (
    DEFAULT_NODE_CAP,
    build_ordinarization_tree,
    enumerate_genus,
    n_g_r_brute,
    ordinarization_number,
)
from ordtree.semigroup import from_generators
from ordtree.verify import SUITES, Check, gap_set_census, run_suites

MEMBER_SCAN_LIMIT = 4 * 10**6


def fmt(value) -> str:
    """Render results, printing rationals as p/q."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{fmt(k)}: {fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, QuasiPolynomial):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@dataclass
class RunReport:
    command: str
    params: dict
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, label, expected, computed, provenance, passed=None, detail="") -> Check:
        c = Check(label, expected, computed, provenance, passed, detail)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self, name: str):
        start = time.perf_counter()
        yield
        self.timings[name] = round(time.perf_counter() - start, 6)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": _jsonable(self.params),
            "results": _jsonable(self.results),
            "checks": [_jsonable(asdict(c)) for c in self.checks],
            "timings": self.timings,
            "ok": self.ok,
        }

    def render(self) -> str:
        lines = [f"$ {self.command}"]
        for key, value in self.results.items():
            text = str(value) if isinstance(value, QuasiPolynomial) else fmt(value)
            if "\n" in text:
                lines.append(f"{key}:")
                lines.extend("  " + row for row in text.splitlines())
            else:
                lines.append(f"{key}: {text}")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"[{status}] ({c.provenance}) {c.label}: expected {fmt(c.expected)}, computed {fmt(c.computed)}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timings.items()))
        return "\n".join(lines) + "\n"


def _workers(args) -> int:
    if args.threads == 0:
        return os.cpu_count() or 1
    return max(1, args.threads)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise SemigroupError(f"expected a comma-separated list of integers, got {text!r}") from None


# -- commands -------------------------------------------------------------------


def cmd_tree(args, report: RunReport) -> str | None:
    with report.timed("build"):
        tree = build_ordinarization_tree(args.genus, args.node_cap, _workers(args))
    report.results["nodes"] = len(tree)
    report.results["levels"] = tree.level_counts
    if args.genus <= 10:
        report.check("levels vs gap-set census", gap_set_census(args.genus), tree.level_counts, "cross-check")
    fmt_name = args.format or "json"
    if fmt_name not in ("json", "dot"):
        raise SemigroupError(f"tree export format must be json or dot, got {fmt_name!r}")
    return tree_to_dot(tree) if fmt_name == "dot" else tree_to_json(tree)


def _formula(g: int, r: int) -> int | None:
    if r == 0:
        return 1
    if r == 1:
        return n_g_1_formula(g)
    if r == 2 and g >= 1:
        return n_g_2_formula(g)
    return None


def cmd_count(args, report: RunReport) -> None:
    g, method = args.genus, args.method
    if args.ord is not None:
        r = args.ord
        brute = formula = None
        if method in ("brute", "both"):
            with report.timed("brute"):
                brute = n_g_r_brute(g, r, "both" if 1 <= r <= 2 else "tree")
            report.results[f"n_{{{g},{r}}} (brute force)"] = brute
        if method in ("formula", "both"):
            formula = _formula(g, r)
            if formula is None and method == "formula":
                raise SemigroupError(f"no closed form for r = {r}; use --method brute")
            if formula is not None:
                report.results[f"n_{{{g},{r}}} (formula)"] = formula
        if brute is not None and formula is not None:
            report.check(f"n_{{{g},{r}}} formula vs brute force", formula, brute, "brute-force")
        return
    with report.timed("enumerate"):
        tree = build_ordinarization_tree(g, args.node_cap, _workers(args))
    levels = tree.level_counts
    report.results["levels"] = levels
    report.results["N(g)"] = len(tree)
    if method in ("formula", "both"):
        for r in range(3):
            expected = _formula(g, r)
            if expected is not None:
                computed = levels[r] if r < len(levels) else 0
                report.check(f"n_{{{g},{r}}} formula vs level count", expected, computed, "brute-force")


def cmd_ord(args, report: RunReport) -> None:
    S = from_generators(_ints(args.gens))
    gd = S.generator_data
    report.results.update(
        {
            "genus": S.genus,
            "frobenius": S.frobenius,
            "multiplicity": S.multiplicity,
            "embedding dimension": gd.embedding_dimension,
            "minimal generators": gd.minimal_generators,
            "effectivity": gd.effectivity,
            "effective generators": gd.effective_generators,
            "r": ordinarization_number(S),
        }
    )


def cmd_family(args, report: RunReport) -> None:
    p = args.params
    if args.kind == "twogen":
        if len(p) != 2:
            raise SemigroupError("twogen takes A B")
        a, b = (int(x) for x in p)
        r = r_two_gen(a, b)
        lo, hi = r_two_gen_bounds(a, b)
        report.results.update({"genus": two_gen_genus(a, b), "r (floor sum)": r, "bounds": [lo, hi]})
        report.check("bounds contain r", True, lo <= r <= hi, "formula")
        simplex = count_right_simplex(RightSimplex((a, b), two_gen_genus(a, b))) - 1
        report.check("floor sum vs simplex count - 1", r, simplex, "cross-check")
        if a * b <= MEMBER_SCAN_LIMIT:
            report.check("floor sum vs member scan", r, r_by_member_scan((a, b)), "brute-force")
    elif args.kind == "supersym":
        spec = supersym_spec(_ints(" ".join(p)))
        r = supersym_r(spec)
        report.results.update(
            {
                "generators": spec.generators,
                "product": spec.product,
                "frobenius": spec.frobenius,
                "genus": spec.genus,
                "r (nested sum)": r,
            }
        )
        if spec.frobenius <= MEMBER_SCAN_LIMIT:
            report.check("nested sum vs member scan", r, r_by_member_scan(spec.generators), "brute-force")
    elif args.kind == "interval":
        if len(p) != 2:
            raise SemigroupError("interval takes A X")
        a, x = (int(v) for v in p)
        spec = interval_spec(a, x)
        r = interval_r(a, x)
        report.results.update({"n": spec.n, "frobenius": spec.frobenius, "genus": spec.genus, "r (formula)": r})
        if spec.frobenius <= MEMBER_SCAN_LIMIT:
            report.check("formula vs member scan", r, r_by_member_scan(spec.generators), "brute-force")
    else:
        raise SemigroupError(f"unknown family {args.kind!r}")


def _compare_rows(report: RunReport, fitted: QuasiPolynomial, printed: dict, label: str) -> None:
    for rho, row in printed.items():
        report.check(f"{label} residue {rho}", tuple(row), fitted.row(rho), "formula")


def cmd_fit(args, report: RunReport) -> None:
    fam = args.family
    if fam == "qa":
        if args.a is None:
            raise SemigroupError("qa needs --a")
        a = args.a
        period = q_a_period(a)
        lo, hi = args.range or (a + 1, a + 6 * period)
        residues = [rho for rho in range(period) if gcd(rho, a) == 1]
        samples = [(b, r_two_gen(a, b)) for b in range(max(lo, a + 1), hi + 1) if gcd(a, b) == 1]
        with report.timed("fit"):
            fit = fit_with_report(samples, 1, period, residues)
        if a in PRINTED_Q_A:
            _compare_rows(report, fit.quasipolynomial, PRINTED_Q_A[a], f"Q_{a}")
        else:
            Q = fit_q_a(a)
            report.check(f"Q_{a} refit on default range", str(Q), str(fit.quasipolynomial), "cross-check")
    elif fam in ("ng1", "ng2"):
        r = 1 if fam == "ng1" else 2
        degree, period = (2, 2) if r == 1 else (4, 12)
        lo, hi = args.range or ((1, 12) if r == 1 else (1, 72))
        with report.timed("samples"):
            samples = [(g, n_g_r_brute(g, r, "tuples")) for g in range(lo, hi + 1)]
        with report.timed("fit"):
            fit = fit_with_report(samples, degree, period)
        printed = ng1_quasipolynomial() if r == 1 else ng2_quasipolynomial()
        _compare_rows(report, fit.quasipolynomial, {rho: printed.row(rho) for rho in range(period)}, f"n_{{g,{r}}}")
    else:
        raise SemigroupError(f"unknown fit family {fam!r}")
    report.results["quasipolynomial"] = fit.quasipolynomial
    report.results["consistent from"] = fit.validated_from
    if fit.first_mismatch is not None:
        report.results["largest mismatch"] = fit.first_mismatch
    report.check("largest sample the fit misses", None, fit.first_mismatch, "cross-check")


def cmd_verify(args, report: RunReport) -> None:
    names = [n for n in args.suites.split(",") if n]
    unknown = sorted(set(names) - set(SUITES) - {"all"})
    if unknown:
        raise BadRange(f"unknown suites {unknown}; choose from {sorted(SUITES)} or all")
    with report.timed("suites"):
        report.checks.extend(run_suites(names, args.max_genus))
    report.results["suites"] = names
    report.results["passed"] = sum(c.passed for c in report.checks)
    report.results["failed"] = sum(not c.passed for c in report.checks)


def _load_system(spec: str) -> LinearSystem:
    path = Path(spec)
    if path.exists():
        return LinearSystem.load(path)
    name = path.name.removesuffix(".sys")
    try:
        return bundled_system(name)
    except FileNotFoundError:
        raise OSError(f"no such system file: {spec}") from None


def cmd_count_system(args, report: RunReport) -> None:
    system = _load_system(args.file)
    hi = args.to if args.to is not None else args.g
    printed = None
    for name, formula in (("pstar", pstar_points_formula), ("polyex", polyex_points_formula)):
        bundled = bundled_system(name)
        if (system.dimension, system.rows) == (bundled.dimension, bundled.rows):
            printed = formula
    counts = {}
    with report.timed("count"):
        for g in range(args.g, hi + 1):
            counts[g] = count_system(system, g)
    report.results["counts"] = counts if hi > args.g else counts[args.g]
    if printed is not None:
        bad = [g for g, c in counts.items() if g >= 1 and c != printed(g)]
        report.check(
            f"count_system vs printed quasipolynomial, g in [{args.g}, {hi}]",
            [], bad, "formula", detail="lists disagreeing g",
        )


def cmd_bench(args, report: RunReport) -> None:
    workers = _workers(args)
    for g in range(1, args.genus + 1):
        with report.timed(f"enumerate g={g}"):
            n = len(enumerate_genus(g, args.node_cap, workers))
        report.results[f"N({g})"] = n
    with report.timed(f"tree g={args.genus}"):
        build_ordinarization_tree(args.genus, args.node_cap, workers)
    with report.timed("n_{30,2} tuples"):
        report.results["n_{30,2}"] = n_g_r_brute(30, 2, "tuples")
    with report.timed("N*(40)"):
        report.results["N*(40)"] = count_system(bundled_system("pstar"), 40)
    with report.timed("r(<105,165,231,385>)"):
        report.results["r(<105,165,231,385>)"] = supersym_r(supersym_spec((3, 5, 7, 11)))


COMMANDS = {
    "tree": cmd_tree,
    "count": cmd_count,
    "ord": cmd_ord,
    "family": cmd_family,
    "fit": cmd_fit,
    "verify": cmd_verify,
    "count-system": cmd_count_system,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes (0 = auto)")
    common.add_argument("--node-cap", type=int, default=argparse.SUPPRESS, help="abort past this many semigroups")
    common.add_argument("--format", choices=("dot", "json"), default=argparse.SUPPRESS, help="tree export format")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the export here instead of stdout")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the report as JSON")

    parser = argparse.ArgumentParser(prog="ordtree", description="Ordinarization invariants of numerical semigroups.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", parents=[common], help="build and export T_g")
    p.add_argument("genus", type=int)

    p = sub.add_parser("count", parents=[common], help="n_{g,r} or the full level vector")
    p.add_argument("genus", type=int)
    p.add_argument("--ord", type=int)
    p.add_argument("--method", choices=("brute", "formula", "both"), default="both")

    p = sub.add_parser("ord", parents=[common], help="invariants and r(S) of <gens>")
    p.add_argument("gens", help="comma-separated generators")

    p = sub.add_parser("family", parents=[common], help="closed forms for special families")
    p.add_argument("kind", choices=("twogen", "supersym", "interval"))
    p.add_argument("params", nargs="+")

    p = sub.add_parser("fit", parents=[common], help="fit a quasipolynomial to computed counts")
    p.add_argument("family", choices=("ng1", "ng2", "qa"))
    p.add_argument("--a", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--max-genus", type=int, default=10)
    p.add_argument("--suites", default="all", help=f"comma list from: all, {', '.join(SUITES)}")

    p = sub.add_parser("count-system", parents=[common], help="integer points of a parametric system")
    p.add_argument("file", help="system file, or the name of a bundled system")
    p.add_argument("g", type=int)
    p.add_argument("--to", type=int, help="sweep g up to this value")

    p = sub.add_parser("bench", parents=[common], help="timings for the main computations")
    p.add_argument("--genus", type=int, default=12)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("threads", 1), ("node_cap", DEFAULT_NODE_CAP), ("format", None), ("out", None), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    params = {k: v for k, v in vars(args).items() if k != "command"}
    report = RunReport(" ".join(["ordtree", *(argv if argv is not None else sys.argv[1:])]), params)
    try:
        with report.timed("total"):
            export = COMMANDS[args.command](args, report)
        if export is not None:
            if args.out:
                Path(args.out).write_text(export)
                report.results["written"] = args.out
            else:
                sys.stdout.write(export)
    except (SemigroupError, OSError) as exc:
        print(f"ordtree: error: {exc}", file=sys.stderr)
        return 2
    stream = sys.stderr if export is not None and not args.out else sys.stdout
    stream.write(json.dumps(report.to_dict(), indent=1) + "\n" if args.json else report.render())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
