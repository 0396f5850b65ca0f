"""Command-line front end.

Exit codes: 0 on success, 1 when a computation fails or a verification
check fails, 2 on a usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath

from .field import PrecisionContext, parse_fraction

DEFAULT_DIGITS = 30


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--digits needs an integer, got {text!r}") from None
    if d < 10:
        raise argparse.ArgumentTypeError("--digits must be at least 10")
    return d


def _number(text: str) -> Fraction:
    """Accept p/q, integers and decimals; decimals are read exactly."""
    try:
        if "/" in text:
            return parse_fraction(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("value must be non-negative")
    return v


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # Subparsers get SUPPRESS defaults so a flag given before the
    # subcommand is not overwritten by the subparser's default.
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--digits", type=_digits, default=d(DEFAULT_DIGITS), help="decimal digits (>= 10)")
    p.add_argument("--seed", type=int, default=d(42), help="seed for randomized checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mahlerq",
        description="Exact Mahler measures of y + prod (z_j + w)/(z_j + 1) and their supporting formulas.",
        parents=[_global_options(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_options(False)]

    p = sub.add_parser("poly", parents=common, help="recursive polynomial R, S, P, Q, Y or Z")
    p.add_argument("--family", required=True, choices=list("RSPQYZ"))
    p.add_argument("--k", type=_nonneg, required=True)

    p = sub.add_parser("altpoly", parents=common, help="series-defined polynomial A..O")
    p.add_argument("--family", required=True, choices=list("ABCDEFGKLUVWNO"))
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--method", choices=("series", "convolution"), default="series")

    p = sub.add_parser("coeffs", parents=common, help="coefficient tables a, b, c, d")
    p.add_argument("--n", type=_nonneg, required=True)

    p = sub.add_parser("integral", parents=common, help="closed-form log-power integral")
    p.add_argument("--which", required=True, choices=("f1", "f2", "g1", "g2", "fsum", "gsum"))
    p.add_argument("--a", type=_number, required=True)
    p.add_argument("--b", type=_number, required=True)
    p.add_argument("--k", type=_nonneg, required=True)

    p = sub.add_parser("special", parents=common, help="zeta, L(chi_-3, s) and polylog identities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--zeta", type=int, metavar="M", help="zeta(M) for odd M >= 3")
    g.add_argument("--lchi3", type=int, metavar="S", help="L(chi_-3, S) for S >= 2")
    g.add_argument("--identity", metavar="NAME", help="named polylogarithm identity")
    p.add_argument("--h", type=_nonneg, default=1, help="index for --identity")

    p = sub.add_parser("measure", parents=common, help="exact and numeric m(Q_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("critical", "derivative"), default="critical")

    p = sub.add_parser("table", parents=common, help="m(Q_n) in both bases for n = 1..max-n")
    p.add_argument("--max-n", type=int, default=4)

    p = sub.add_parser("verify", parents=common, help="run verification batteries")
    p.add_argument("--suite", default="all", choices=("all", "polys", "integrals", "identities", "measures", "torus"))
    p.add_argument("--tol", type=float, default=1e-8)
    return parser


# ---------------------------------------------------------------------------


def _emit(args, text: str, obj) -> None:
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text)


def _cmd_poly(args, ctx) -> int:
    from .recpoly import get_poly

    poly = get_poly(args.family, args.k)
    obj = {"family": args.family, "k": args.k, **poly.to_json()}
    _emit(args, str(poly), obj)
    return 0


def _cmd_altpoly(args, ctx) -> int:
    from .series import am_expl, bm_expl, extract_family

    if args.method == "convolution":
        if args.family not in "AB":
            print("error: the convolution method exists for A and B only", file=sys.stderr)
            return 2
        poly = am_expl(args.m) if args.family == "A" else bm_expl(args.m)
    else:
        poly = extract_family(args.family, args.m)
    obj = {"family": args.family, "k": args.m, **poly.to_json(), "method": args.method}
    _emit(args, str(poly), obj)
    return 0


def _cmd_coeffs(args, ctx) -> int:
    from .coeffs import build_tables

    table = build_tables(args.n)
    lines = []
    for name in ("a", "b", "c", "d"):
        rows = sorted({n for n, _ in getattr(table, name)})
        for n in rows:
            vals = ", ".join(str(v) for v in table.row(name, n))
            lines.append(f"{name}[{n}] = [{vals}]")
    _emit(args, "\n".join(lines), table.to_json())
    return 0


def _cmd_integral(args, ctx) -> int:
    from .closedforms import closed_form

    form = closed_form(args.which, args.a, args.b, args.k)
    value = ctx.render(form.evaluate(ctx))
    obj = {
        "which": args.which,
        "a": f"{args.a.numerator}/{args.a.denominator}",
        "b": f"{args.b.numerator}/{args.b.denominator}",
        "k": args.k,
        "exact": str(form),
        "numeric": value,
    }
    _emit(args, f"{value}\nexact: {form}", obj)
    return 0


def _cmd_special(args, ctx) -> int:
    from .lvalues import identity_sides, l_chi3, reduce_identity, zeta_odd

    if args.zeta is not None:
        value = ctx.render(zeta_odd(args.zeta, ctx))
        _emit(args, value, {"function": "zeta", "s": args.zeta, "numeric": value})
        return 0
    if args.lchi3 is not None:
        value = ctx.render(l_chi3(args.lchi3, ctx))
        _emit(args, value, {"function": "lchi3", "s": args.lchi3, "numeric": value})
        return 0
    iv = reduce_identity(args.identity, args.h)
    lhs, rhs = identity_sides(iv.name, args.h, ctx)
    # both sides are real for zeta targets and purely imaginary for i*L
    part = mpmath.re if iv.target == "zeta" else mpmath.im
    with ctx.working():
        lhs, rhs = part(lhs), part(rhs)
    target = f"zeta({iv.weight})" if iv.target == "zeta" else f"i*L(chi_-3,{iv.weight})"
    label = "" if iv.target == "zeta" else "Im "
    text = (
        f"{iv.name} at weight {iv.weight} = ({iv.coeff})*{target}\n"
        f"{label}lhs = {ctx.render(lhs)}\n{label}rhs = {ctx.render(rhs)}"
    )
    obj = {
        "identity": iv.name,
        "h": iv.h,
        "weight": iv.weight,
        "target": iv.target,
        "coeff": iv.coeff.to_json(),
        "lhs": ctx.render(lhs),
        "rhs": ctx.render(rhs),
    }
    _emit(args, text, obj)
    return 0


def _cmd_measure(args, ctx) -> int:
    from .measure import measure_expression, measure_numeric

    if args.n < 1:
        print("error: --n must be at least 1", file=sys.stderr)
        return 2
    expr = measure_expression(args.n, args.basis)
    value = ctx.render(measure_numeric(args.n, ctx))
    _emit(args, f"m(Q_{args.n}) = {expr}\n        = {value}", expr.to_json(numeric=value))
    return 0


def _cmd_table(args, ctx) -> int:
    from .measure import measure_expression, measure_numeric

    if args.max_n < 1:
        print("error: --max-n must be at least 1", file=sys.stderr)
        return 2
    rows = []
    lines = []
    for n in range(1, args.max_n + 1):
        crit = measure_expression(n, "critical")
        deriv = crit.to_basis("derivative")
        value = ctx.render(measure_numeric(n, ctx))
        rows.append({"n": n, "critical": crit.to_json()["terms"], "derivative": deriv.to_json()["terms"], "numeric": value})
        lines.append(f"m(Q_{n}) = {crit}\n       = {deriv}\n       = {value}")
    _emit(args, "\n".join(lines), {"rows": rows})
    return 0


def _cmd_verify(args, ctx) -> int:
    from .oracle import verify_suite

    report = verify_suite(args.suite, seed=args.seed, tol=args.tol)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {c.name}  err={c.error:.3g} tol={c.tol:.1g}  [{c.target}]")
        failed = sum(not c.passed for c in report.checks)
        print(f"{len(report.checks) - failed}/{len(report.checks)} checks passed in {report.seconds:.1f} s")
    return 0 if report.ok else 1


_COMMANDS = {
    "poly": _cmd_poly,
    "altpoly": _cmd_altpoly,
    "coeffs": _cmd_coeffs,
    "integral": _cmd_integral,
    "special": _cmd_special,
    "measure": _cmd_measure,
    "table": _cmd_table,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    ctx = PrecisionContext.from_digits(args.digits)
    try:
        return _COMMANDS[args.command](args, ctx)
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
