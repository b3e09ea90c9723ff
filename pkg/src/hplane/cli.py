"""Command-line front end: ``hplane {expand,coeff,table,normalize,verify,bench}``.

Exit codes: 0 success, 1 verification or oracle mismatch, 2 usage or parse error.
The document goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence

from . import binomials, checks
from .algebra import STRATEGIES, NCPolynomial, PlaneSpec, nc_pow, x_plus_y
from .coeffring import ParamPoly, as_rational
from .expr import ParseError, normalize_text
from .render import (
    coeff_json,
    dump_json,
    latex_coeff,
    latex_ncpoly,
    plane_json,
    terms_json,
    text_table,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TABLE_LIMIT = 64


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, message: str, document: str = ""):
        super().__init__(message)
        self.document = document


def parse_param(text: str):
    if text == "sym":
        return None
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as err:
        raise argparse.ArgumentTypeError(f"expected a rational or 'sym', got {text!r}") from err


def _closed_form(n: int, k: int, plane: PlaneSpec):
    """(label, value) of the closed-form coefficient, or None for a general plane."""
    if plane.q == 1:
        return "h-binomial", binomials.h_binomial(n, k).evaluate(h=plane.h)
    if plane.h == 0:
        return "q-binomial", binomials.q_binomial(n, k).evaluate(q=plane.q)
    return None


def cmd_expand(n: int, plane: PlaneSpec, fmt: str = "table", strategy: str = "batched") -> str:
    if n < 0:
        raise UsageError("--n must be nonnegative")
    p = nc_pow(x_plus_y(), n, plane, strategy)
    coeffs = [p.coefficient(k, n - k) for k in range(n + 1)]
    check = None
    closed: List[Optional[ParamPoly]] = [None] * (n + 1)
    if _closed_form(0, 0, plane) is not None:
        check = _closed_form(0, 0, plane)[0]
        closed = [_closed_form(n, k, plane)[1] for k in range(n + 1)]
        diff = [
            f"  k={k}: expansion {c}  closed form {cf}"
            for k, (c, cf) in enumerate(zip(coeffs, closed))
            if c != cf
        ]
        if diff or len(p) != sum(1 for c in coeffs if c):
            raise VerificationFailed(f"(x+y)^{n} disagrees with the {check} closed form:\n" + "\n".join(diff))

    if fmt == "json":
        return dump_json({
            "plane": plane_json(plane),
            "n": n,
            "check": check,
            "terms": terms_json(p),
        })
    if fmt == "latex":
        return rf"(x + y)^{{{n}}} = {latex_ncpoly(p)}"
    rows = []
    for k in range(n + 1):
        row = [str(k), NCPolynomial.monomial(k, n - k).to_text(), coeffs[k].to_text()]
        if check:
            row.append(closed[k].to_text())
        rows.append(row)
    header = ["k", "term", "expansion"] + ([check] if check else [])
    note = f"# check: expansion == {check} closed form" if check else "# no closed form for this plane"
    return f"# (x+y)^{n} in plane {plane}\n{note}\n" + text_table(header, rows)


def cmd_coeff(n: int, k: int, plane: PlaneSpec, fmt: str = "table") -> str:
    if n < 0:
        raise UsageError("--n must be nonnegative")
    if k < 0 or k > n:
        value, provenance = ParamPoly(), "zero convention (k outside 0..n)"
    elif plane.q == 1:
        closed = binomials.h_binomial(n, k)
        table = binomials.h_binomial_by_recurrence(n)
        if table[n, k] != closed:
            raise VerificationFailed(f"[{n} {k}]_h: closed form {closed} != recurrence {table[n, k]}")
        value = closed.evaluate(h=plane.h)
        provenance = "closed form C(n,k)*prod(1 + r*h) == Pascal-style recurrence"
    elif plane.h == 0:
        closed = binomials.q_binomial(n, k)
        oracle = binomials.q_binomial_from_pochhammer(n, k)
        if closed != oracle:
            raise VerificationFailed(f"[{n} {k}]_q: recurrence {closed} != Pochhammer quotient {oracle}")
        value = closed.evaluate(q=plane.q)
        provenance = "Gaussian recurrence == q-Pochhammer quotient"
    else:
        value = nc_pow(x_plus_y(), n, plane).coefficient(k, n - k)
        provenance = "brute-force expansion (no closed form for this plane)"

    if fmt == "json":
        return dump_json({
            "plane": plane_json(plane),
            "n": n,
            "k": k,
            "coeff": coeff_json(value),
            "provenance": provenance,
        })
    if fmt == "latex":
        return rf"\begin{{bmatrix}} {n} \\ {k} \end{{bmatrix}} = {latex_coeff(value)}"
    return f"[{n} {k}] = {value}\nprovenance: {provenance}"


def cmd_table(n_max: int, plane: PlaneSpec, fmt: str = "table", limit: int = DEFAULT_TABLE_LIMIT) -> str:
    if n_max < 0:
        raise UsageError("--max-n must be nonnegative")
    if n_max > limit:
        raise UsageError(f"--max-n {n_max} exceeds the limit {limit} (raise it with --limit)")
    if plane.q == 1:
        table = binomials.h_binomial_by_recurrence(n_max)
        closed = binomials.h_binomial
        kind = "h-binomial"
    elif plane.h == 0:
        table = binomials.q_binomial_by_recurrence(n_max)
        closed = binomials.q_binomial_from_pochhammer
        kind = "q-binomial"
    else:
        raise UsageError("triangles exist only for q=1 (h-binomial) or h=0 (q-binomial)")
    for n in range(n_max + 1):
        for k in range(n + 1):
            if table[n, k] != closed(n, k):
                raise VerificationFailed(f"{kind} triangle entry ({n},{k}): recurrence {table[n, k]} != closed form {closed(n, k)}")
    table = table.evaluate(q=plane.q if kind == "q-binomial" else None, h=plane.h if kind == "h-binomial" else None)

    if fmt == "json":
        return dump_json({
            "plane": plane_json(plane),
            "kind": kind,
            "n_max": n_max,
            "entries": [
                {"n": n, "k": k, "coeff": coeff_json(table[n, k])}
                for n in range(n_max + 1)
                for k in range(n + 1)
            ],
        })
    if fmt == "latex":
        rows = [" & ".join(latex_coeff(c) for c in table.row(n)) + r" \\" for n in range(n_max + 1)]
        cols = "l" * (n_max + 1)
        return "\n".join([rf"\begin{{array}}{{{cols}}}"] + rows + [r"\end{array}"])
    lines = [f"# {kind} triangle, plane {plane}"]
    lines += [f"n={n}: " + " | ".join(c.to_text() for c in table.row(n)) for n in range(n_max + 1)]
    return "\n".join(lines)


def cmd_normalize(text: str, plane: PlaneSpec, fmt: str = "table", strategy: str = "batched") -> str:
    p = normalize_text(text, plane, strategy)
    if fmt == "json":
        return dump_json({"plane": plane_json(plane), "input": text, "terms": terms_json(p)})
    if fmt == "latex":
        return latex_ncpoly(p)
    return p.to_text()


def cmd_verify(max_n: int = 12) -> str:
    if max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    results = checks.run_all(max_n)
    report = "\n".join(r.line() for r in results)
    failed = [r for r in results if not r.passed]
    summary = f"{len(results) - len(failed)}/{len(results)} checks passed"
    if failed:
        first = failed[0]
        raise VerificationFailed(f"{first.name}: {first.counterexample}", report + "\n" + summary)
    return report + "\n" + summary


def cmd_bench(max_n: int, strategies: Sequence[str], plane: PlaneSpec, fmt: str = "table") -> str:
    if not strategies:
        raise UsageError("nothing to benchmark: empty strategy list")
    if max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    rows, results = [], {}
    for strategy in strategies:
        total = last = 0.0
        for n in range(max_n + 1):
            start = time.perf_counter()
            p = nc_pow(x_plus_y(), n, plane, strategy)
            last = time.perf_counter() - start
            total += last
            results.setdefault(n, {})[strategy] = p
        rows.append({"strategy": strategy, "max_n": max_n, "total_seconds": total, "last_seconds": last})
    for n, by_strategy in results.items():
        if len(set(by_strategy.values())) > 1:
            raise VerificationFailed(f"strategies disagree on (x+y)^{n}")

    if fmt == "json":
        return dump_json({"plane": plane_json(plane), "rows": rows})
    if fmt == "latex":
        body = [rf"{r['strategy']} & {r['max_n']} & {r['total_seconds']:.6f} \\" for r in rows]
        return "\n".join([r"\begin{tabular}{lrr}"] + body + [r"\end{tabular}"])
    return text_table(
        ["strategy", "max_n", "total_s", f"n={max_n}_s"],
        [[r["strategy"], str(r["max_n"]), f"{r['total_seconds']:.6f}", f"{r['last_seconds']:.6f}"] for r in rows],
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hplane", description="Exact algebra of the plane x*y = q*y*x + h*y^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def plane_opts(p, q="1", h="sym"):
        p.add_argument("--q", type=parse_param, default=parse_param(q), help=f"rational or 'sym' (default {q})")
        p.add_argument("--h", type=parse_param, default=parse_param(h), help=f"rational or 'sym' (default {h})")
        p.add_argument("--format", choices=("table", "json", "latex"), default="table")

    p = sub.add_parser("expand", help="normal form of (x+y)^n")
    p.add_argument("--n", type=int, required=True)
    plane_opts(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="batched")

    p = sub.add_parser("coeff", help="a single binomial coefficient [n k]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    plane_opts(p)

    p = sub.add_parser("table", help="Pascal-style triangle of coefficients")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_TABLE_LIMIT)
    plane_opts(p)

    p = sub.add_parser("normalize", help="normal form of an expression")
    p.add_argument("expr")
    plane_opts(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="batched")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--max-n", type=int, default=12)

    p = sub.add_parser("bench", help="time naive vs batched expansion of (x+y)^n")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--strategy", choices=STRATEGIES, nargs="*", default=list(STRATEGIES))
    plane_opts(p)
    return parser


def run(args: argparse.Namespace) -> str:
    if args.command == "verify":
        return cmd_verify(args.max_n)
    plane = PlaneSpec(q=args.q, h=args.h)
    if args.command == "expand":
        return cmd_expand(args.n, plane, args.format, args.strategy)
    if args.command == "coeff":
        return cmd_coeff(args.n, args.k, plane, args.format)
    if args.command == "table":
        return cmd_table(args.max_n, plane, args.format, args.limit)
    if args.command == "normalize":
        return cmd_normalize(args.expr, plane, args.format, args.strategy)
    if args.command == "bench":
        return cmd_bench(args.max_n, args.strategy, plane, args.format)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        document = run(args)
    except (UsageError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as err:
        if err.document:
            print(err.document)
        print(f"verification failed: {err}", file=sys.stderr)
        return EXIT_FAIL
    print(document)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
