"""Command-line interface.

Usage:
    ramanujan-products verify theorem1 --a 3
    ramanujan-products verify triple-family --forms 2,1 3,1 6,5
    ramanujan-products k --checkpoints 1,4,100,10000 --format csv
    ramanujan-products count-b 10000000 --method both --theta 2
    ramanujan-products euler-products --s 2 --num-primes 10000
    ramanujan-products selftest

Exit status: 0 when everything checked holds, 1 when an identity fails or a
tolerance is missed, 2 on invalid input or a domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from . import constants, identities, selftest, sum_two_squares
from .numerics import DEFAULT_PRECISION
from .primes import first_primes_in_class
from .rational_core import DomainError, LinearForm, as_rational, to_bigfloat

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

FAMILIES = ("theorem1", "remark-alt", "squared", "lemma1", "theorem3", "theorem4",
            "cubic", "triple-family")


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


def digits_for(precision_bits: int) -> int:
    return max(1, math.floor(precision_bits * math.log10(2)) - 2)


def render(x, precision_bits: int) -> str:
    return mpmath.nstr(x, digits_for(precision_bits), strip_zeros=False)


def render_rational(q: Fraction | None) -> str | None:
    if q is None:
        return None
    return f"{q.numerator}/{q.denominator}"


def emit(fmt: str, record: dict[str, Any], rows: list[dict[str, Any]] | None = None) -> None:
    """Print one JSON document, a CSV table, or ``key: value`` text."""
    out = sys.stdout
    if fmt == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        table = rows if rows is not None else [{k: v for k, v in record.items()
                                                if not isinstance(v, (dict, list))}]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(table[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(table)
        out.write(buf.getvalue())
        return
    for key, value in record.items():
        if isinstance(value, list):
            out.write(f"{key}:\n")
            for item in value:
                out.write("  " + "  ".join(f"{k}={v}" for k, v in item.items()) + "\n")
        elif isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {v}\n")
        else:
            out.write(f"{key}: {value}\n")


def _rational(text: str, name: str) -> Fraction:
    try:
        return as_rational(text)
    except ValueError as exc:
        raise InputError(f"--{name}: {exc}") from exc
    except ZeroDivisionError as exc:
        raise InputError(f"--{name}: zero denominator in {text!r}") from exc


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise InputError(f"family {args.family!r} needs " + ", ".join(f"--{n}" for n in missing))


def _parse_forms(items: Sequence[str]) -> list[LinearForm]:
    forms = []
    for item in items:
        parts = item.split(",")
        if len(parts) != 2:
            raise InputError(f"linear form must look like 'u,v', got {item!r}")
        try:
            forms.append(LinearForm(_rational(parts[0], "forms"), _rational(parts[1], "forms")))
        except DomainError as exc:
            raise InputError(str(exc)) from exc
    return forms


def _result_record(family: str, params: dict[str, Any],
                   result: identities.IdentityCheckResult) -> dict[str, Any]:
    return {
        "family": family,
        "params": params,
        "holds": result.holds,
        "lhs_squared": render_rational(result.lhs_squared),
        "rhs": render_rational(result.rhs),
        "domain": result.domain.value,
    }


def cmd_verify(args) -> int:
    family = args.family
    params: dict[str, Any] = {}
    result = None
    if family in ("theorem1", "remark-alt", "squared"):
        _require(args, "a")
        a = _rational(args.a, "a")
        params["a"] = render_rational(a)
        if family == "theorem1":
            if identities.theorem1_domain(a) is identities.DomainStatus.EXCLUDED:
                raise DomainError(f"a = {a} is Excluded from the generalized identity")
            result = identities.verify_theorem1(a)
        elif family == "remark-alt":
            result = identities.verify_remark_alt(a)
        else:
            form = identities.Form.ALTERNATIVE if args.form == "alternative" else identities.Form.FULL
            params["form"] = form.value
            holds = identities.verify_squared(a, form)
            record = {"family": family, "params": params, "holds": holds,
                      "lhs_squared": None, "rhs": None, "domain": None}
            emit(args.format, record)
            return EXIT_OK if holds else EXIT_FAIL
    elif family == "lemma1":
        _require(args, "seq")
        seq = [_rational(x, "seq") for item in args.seq for x in item.split(",") if x]
        params["seq"] = [render_rational(x) for x in seq]
        result = identities.verify_lemma1(seq)
    elif family in ("theorem3", "cubic"):
        _require(args, "m", "n")
        params.update(m=args.m, n=args.n)
        if family == "cubic":
            result = identities.verify_theorem5_cubic(args.m, args.n)
        else:
            _require(args, "case")
            case = identities.TelescopeCase[args.case.upper()]
            params["case"] = case.value
            result = identities.verify_theorem3(case, args.m, args.n)
    elif family == "theorem4":
        _require(args, "u", "v", "m", "n")
        u, v = _rational(args.u, "u"), _rational(args.v, "v")
        params.update(u=render_rational(u), v=render_rational(v), m=args.m, n=args.n)
        result = identities.verify_theorem4(u, v, args.m, args.n)
    elif family == "triple-family":
        _require(args, "forms")
        forms = _parse_forms(args.forms)
        params["forms"] = [str(f) for f in forms]
        holds = identities.verify_triple_family(forms)
        record = {"family": family, "params": params, "holds": holds,
                  "lhs_squared": None, "rhs": None, "domain": None}
        emit(args.format, record)
        return EXIT_OK if holds else EXIT_FAIL
    else:  # argparse restricts the choices
        raise InputError(f"unknown family {family!r}")

    record = _result_record(family, params, result)
    if result.rhs != 0 and family in ("theorem1", "remark-alt", "lemma1"):
        record["rhs_reciprocal"] = render(
            to_bigfloat(1 / result.rhs, args.precision_bits), args.precision_bits)
    emit(args.format, record)
    return EXIT_OK if result.holds else EXIT_FAIL


# Decimal places the truncated product is expected to reach, by prime count.
PAPER_DECIMALS = ((10_000, 6), (4, 2))


def expected_decimals(num_primes: int) -> int:
    for threshold, decimals in PAPER_DECIMALS:
        if num_primes >= threshold:
            return decimals
    return 0


def _int_list(items: Sequence[str], name: str) -> list[int]:
    try:
        return [int(x) for item in items for x in item.split(",") if x]
    except ValueError as exc:
        raise InputError(f"--{name}: {exc}") from exc


def cmd_k(args) -> int:
    checkpoints = _int_list(args.checkpoints, "checkpoints")
    if not checkpoints:
        raise InputError("--checkpoints needs at least one value")
    try:
        report = constants.k_convergence_report(checkpoints, args.precision_bits)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    prec = args.precision_bits
    rows = [{
        "num_primes": row.num_primes,
        "value": render(row.value, prec),
        "abs_error": mpmath.nstr(row.abs_error, 10),
        "correct_decimals": row.correct_decimals,
    } for row in report.rows]
    record = {"rows": rows, "reference": constants.K_REFERENCE_DIGITS}
    emit(args.format, record, rows)
    ok = all(row.correct_decimals >= expected_decimals(row.num_primes) for row in report.rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count_b(args) -> int:
    x = args.x
    if x < 1:
        raise InputError("x must be at least 1")
    prec = args.precision_bits
    methods = {
        "mark": [sum_two_squares.CountMethod.MARK_SIEVE],
        "factor": [sum_two_squares.CountMethod.FACTOR_SIEVE],
        "both": list(sum_two_squares.CountMethod),
    }[args.method]
    counts = {}
    for method in methods:
        try:
            res = sum_two_squares.b_count(x, method, memory_mb=args.limit_memory_mb)
        except (ValueError, MemoryError) as exc:
            raise InputError(str(exc)) from exc
        counts[method.value] = res.count
    agree = len(set(counts.values())) == 1
    count = next(iter(counts.values()))
    record: dict[str, Any] = {"x": x, "counts": counts}
    row: dict[str, Any] = {"x": x}
    row.update(counts)
    if x >= 2:
        ratio = sum_two_squares.landau_ratio(x, prec, count=count)
        record["landau_ratio"] = render(ratio, prec)
        row["landau_ratio"] = record["landau_ratio"]
    if args.theta is not None:
        theta = sum_two_squares.theta_remainder(args.theta, x, prec, method=methods[0])
        record["theta"] = {
            "A": theta.A,
            "x": theta.x,
            "range_count": theta.range_count,
            "integral": render(theta.integral_value, prec),
            "theta": render(theta.theta, prec),
            "relative_theta": mpmath.nstr(theta.relative_theta, 10),
        }
        row.update({f"theta_{k}": v for k, v in record["theta"].items() if k != "x"})
    record["methods_agree"] = agree
    emit(args.format, record, [row])
    return EXIT_OK if agree else EXIT_FAIL


def _exact_euler_factor(p: int, s: int, kind: constants.EulerKind) -> Fraction:
    ps = Fraction(p) ** s
    if kind is constants.EulerKind.ONE_MINUS:
        return 1 - 1 / ps**2
    if kind is constants.EulerKind.RATIO:
        return (ps + 1) / (ps - 1)
    return 1 + 1 / ps


def cmd_euler_products(args) -> int:
    prec = args.precision_bits
    try:
        with mpmath.workprec(prec):
            s = mpmath.mpf(args.s)
    except (ValueError, TypeError) as exc:
        raise InputError(f"--s: {exc}") from exc
    if not s > 1:
        raise DomainError(f"need s > 1, got {args.s}")
    if args.num_primes < 1:
        raise InputError("--num-primes must be at least 1")
    integral_s = int(s) if s == int(s) else None
    exact_primes = None
    if integral_s is not None and args.num_primes <= 100:
        exact_primes = first_primes_in_class(args.num_primes)
    rows = []
    for kind in constants.EulerKind:
        partial = constants.euler_product_partial(s, args.num_primes, kind, prec)
        target = constants.euler_product_limit(s, kind, prec)
        with mpmath.workprec(prec):
            err = abs(partial - target)
        row = {
            "kind": kind.value,
            "partial": render(partial, prec),
            "target": render(target, prec),
            "abs_error": mpmath.nstr(err, 10),
        }
        if exact_primes is not None:
            q = Fraction(1)
            for p in exact_primes:
                q *= _exact_euler_factor(p, integral_s, kind)
            row["exact"] = render_rational(q)
        rows.append(row)
    diff = constants.lemma1_limit_check(s, args.num_primes, prec)
    tol = mpmath.ldexp(1, -prec + 16)
    record = {
        "s": args.s,
        "num_primes": args.num_primes,
        "rows": rows,
        "lemma1_difference": mpmath.nstr(diff, 10),
        "lemma1_holds": bool(diff <= tol),
    }
    emit(args.format, record, rows)
    return EXIT_OK if diff <= tol else EXIT_FAIL


def cmd_selftest(args) -> int:
    outcomes = selftest.run_selftest()
    rows = [{"check": o.name, "passed": o.passed, "detail": o.detail} for o in outcomes]
    if args.format == "text":
        for o in outcomes:
            line = f"{'PASS' if o.passed else 'FAIL'}  {o.name}"
            sys.stdout.write(line + (f"  ({o.detail})" if o.detail else "") + "\n")
    else:
        emit(args.format, {"checks": rows, "all_passed": all(o.passed for o in outcomes)}, rows)
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION)
    common.add_argument("--limit-memory-mb", type=float, default=sum_two_squares.DEFAULT_MEMORY_MB)

    parser = argparse.ArgumentParser(
        prog="ramanujan-products",
        description="Exact Ramanujan-type product identities and Landau-Ramanujan numerics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check one identity exactly")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--a", help="parameter as p/q")
    p.add_argument("--form", choices=("full", "alternative"), default="full")
    p.add_argument("--seq", nargs="+", help="sequence elements (p/q), space or comma separated")
    p.add_argument("--case", choices=("shift0", "even", "odd"))
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--forms", nargs="+", help="three linear forms as u,v")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("k", parents=[common], help="Landau-Ramanujan convergence report")
    p.add_argument("--checkpoints", nargs="+", default=["1,4,100,1000,10000"])
    p.set_defaults(func=cmd_k)

    p = sub.add_parser("count-b", parents=[common], help="count sums of two squares up to x")
    p.add_argument("x", type=int)
    p.add_argument("--method", choices=("mark", "factor", "both"), default="mark")
    p.add_argument("--theta", type=int, metavar="A", help="also report theta(x) from A")
    p.set_defaults(func=cmd_count_b)

    p = sub.add_parser("euler-products", parents=[common], help="partial Euler products vs zeta")
    p.add_argument("--s", required=True, help="real exponent s > 1 (decimal)")
    p.add_argument("--num-primes", type=int, default=10_000)
    p.set_defaults(func=cmd_euler_products)

    p = sub.add_parser("selftest", parents=[common], help="run the identity corpus")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < 16:
        parser.error("--precision-bits must be at least 16")
    try:
        return args.func(args)
    except (InputError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
