"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import semigroup as sg
from .cesaro import ZeroOrbitMean, cesaro_quadrature, cesaro_zero_exact
from .pl_function import DomainError, OmegaFn, StructureError, dumps, in_C, loads, sup_dist, to_rational
from .verify import CHECK_IDS, InstanceGen, reports_to_json, run_all, run_suite


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational literal (use p/q or an integer): {text!r}")


def format_rational(q: Fraction) -> str:
    """Exact decimal when the expansion terminates, ``p/q`` otherwise."""
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    if k == 0:
        return str(q.numerator)
    scaled = abs(q.numerator) * 10 ** k // q.denominator
    sign = "-" if q < 0 else ""
    whole, frac = divmod(scaled, 10 ** k)
    return f"{sign}{whole}.{frac:0{k}d}"


def approx(q: Fraction, digits: int) -> str:
    """``~``-prefixed decimal truncated to ``digits`` places."""
    scaled = abs(q.numerator) * 10 ** digits // q.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    sign = "-" if q < 0 and scaled else ""
    return f"~{sign}{whole}.{frac:0{digits}d}" if digits else f"~{sign}{whole}"


def _show(q: Fraction, digits: int | None) -> str:
    return str(q) if digits is None else f"{q} ({approx(q, digits)}, truncated)"


def load_source(spec: str) -> OmegaFn:
    """Builtin name (``zero``, ``v:s``, ``w:s``, ``T0:t``), a JSON file, or ``-``."""
    try:
        if spec == "zero":
            return sg.ZERO
        kind, _, arg = spec.partition(":")
        if kind in ("v", "w", "T0") and arg:
            q = to_rational(arg)
            if kind == "v":
                return sg.v(q)
            if kind == "w":
                return sg.w(q)
            return sg.orbit_zero_closed_form(q)
        text = sys.stdin.read() if spec == "-" else Path(spec).read_text()
        return loads(text)
    except FileNotFoundError:
        raise UsageError(f"no such function file or builtin: {spec!r}")
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"cannot read function {spec!r}: {exc}")


def _require_C(x: OmegaFn, spec: str) -> None:
    membership = in_C(x)
    if not membership:
        raise UsageError(f"{spec} is not in C: {membership.violation}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_apply(args) -> int:
    x = load_source(args.x)
    _require_C(x, args.x)
    if args.t < 0:
        raise UsageError(f"t must be >= 0, got {args.t}")
    y = sg.apply(args.t, x)
    _emit(dumps(y), args.out)
    print(f"sup_dist = {_show(sup_dist(y, x), args.decimal)}")
    return 0


def _mean_record(mean) -> dict:
    if isinstance(mean, ZeroOrbitMean):
        return {
            "t": str(mean.t),
            "minus_one": "0",
            "pieces": [
                {"lo": str(p.lo), "hi": None if p.hi is None else str(p.hi),
                 "anchor": str(p.anchor), "coeffs": [str(p.c0), str(p.c1), str(p.c2)]}
                for p in mean.pieces
            ],
        }
    return json.loads(dumps(mean))


def cmd_cesaro(args) -> int:
    x = load_source(args.x)
    _require_C(x, args.x)
    if args.t <= 0:
        raise UsageError(f"t must be > 0, got {args.t}")
    if args.h is None:
        if x != sg.ZERO:
            raise UsageError("--h is required unless x is the zero function")
        res = cesaro_zero_exact(args.t)
    else:
        if args.h <= 0 or (args.t / args.h).denominator != 1:
            raise UsageError(f"step {args.h} must be positive and divide t = {args.t}")
        res = cesaro_quadrature(x, args.t, args.h)
    print(f"method = {res.method.value}")
    print(f"residual = {_show(res.distance_to(x), args.decimal)}")
    print(f"error_bound = {_show(res.error_bound, args.decimal)}")
    if args.out:
        Path(args.out).write_text(json.dumps(_mean_record(res.mean)) + "\n")
    return 0


def cmd_fixedpoints(args) -> int:
    if args.x:
        x = load_source(args.x)
        _require_C(x, args.x)
        print(f"common_fixed_point = {str(sg.is_common_fixed_point(x)).lower()}")
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
            print(f"||T({t})x - x|| = {sup_dist(sg.apply(t, x), x)}")
        return 0
    for kind in sg.Family:
        for j in range(args.grid + 1):
            s = Fraction(j, 2 * args.grid)
            z = sg.fixed_point(sg.FixedPointFamily(kind, s))
            print(f"{kind.value}:{s}\t{dumps(z)}")
    return 0


def _sample_grid(a: Fraction, b: Fraction, n: int) -> list[Fraction]:
    if n <= 0 or a == b:
        return [a, b]
    return [a + (b - a) * k / n for k in range(n + 1)]


def cmd_plotdata(args) -> int:
    if args.residual_sweep:
        lo, hi = args.residual_sweep
        rows = [(Fraction(t), cesaro_zero_exact(t).mean.sup_norm()) for t in range(lo, hi + 1)]
        header = ("t", "residual")
    else:
        rows, header = _function_rows(args), ("u", "value")
    if args.format == "json":
        text = json.dumps([{header[0]: format_rational(a), header[1]: format_rational(b)}
                           for a, b in rows])
    else:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(header)
        wr.writerows((format_rational(a), format_rational(b)) for a, b in rows)
        text = buf.getvalue().rstrip("\n")
    _emit(text, args.out)
    return 0


def _function_rows(args) -> list[tuple[Fraction, Fraction]]:
    src = args.x
    if src == "f":
        a = args.lo if args.lo is not None else Fraction(-3)
        b = args.hi if args.hi is not None else Fraction(1)
        knots = [u for u, _ in sg.F_PROFILE]
        value = sg.f
    elif src.startswith("A:"):
        try:
            mean = ZeroOrbitMean(to_rational(src[2:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad Cesaro source {src!r}: {exc}")
        a = args.lo if args.lo is not None else Fraction(0)
        b = args.hi if args.hi is not None else mean.t + 1
        knots = mean.boundaries
        value = mean
    else:
        x = load_source(src)
        a = args.lo if args.lo is not None else Fraction(-1)
        b = args.hi if args.hi is not None else x.points[-1][0] + 1
        knots = [Fraction(-1)] + [u for u, _ in x.points]
        value = x
    if a > b:
        raise UsageError(f"empty range [{a}, {b}]")
    us = {u for u in knots if a <= u <= b}
    us |= {u for u in _sample_grid(a, b, args.samples)}
    if src != "f":
        # (-1, 0) and below -1 are outside the domain
        us = {u for u in us if u == -1 or u >= 0}
    return [(u, value(u)) for u in sorted(us)]


def cmd_verify(args) -> int:
    gen = InstanceGen(seed=args.seed, count=args.count)
    reports = [run_suite(s, gen) for s in args.suite] if args.suite else run_all(gen)
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.check_id}: {r.passed}/{r.instances}")
        if r.witness is not None:
            print(f"  witness: {json.dumps(r.witness)}")
    if args.json:
        Path(args.json).write_text(reports_to_json(reports) + "\n")
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plsemigroup", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    src_help = "zero, v:s, w:s, T0:t, a JSON function file, or - for stdin"

    a = sub.add_parser("apply", help="evaluate T(t)x")
    a.add_argument("--t", type=parse_rational, required=True)
    a.add_argument("--x", required=True, help=src_help)
    a.add_argument("--out")
    a.add_argument("--decimal", type=int, metavar="K")
    a.set_defaults(func=cmd_apply)

    c = sub.add_parser("cesaro", help="Cesaro mean residual ||A(t)x - x||")
    c.add_argument("--t", type=parse_rational, required=True)
    c.add_argument("--x", required=True, help=src_help)
    c.add_argument("--h", type=parse_rational, help="trapezoid step; must divide t")
    c.add_argument("--out", help="write the mean function as JSON")
    c.add_argument("--decimal", type=int, metavar="K")
    c.set_defaults(func=cmd_cesaro)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--suite", action="append", choices=CHECK_IDS)
    v.add_argument("--json", help="write reports as JSON")
    v.set_defaults(func=cmd_verify)

    fp = sub.add_parser("fixedpoints", help="list the common fixed points or test one")
    fp.add_argument("--x", help=src_help)
    fp.add_argument("--grid", type=int, default=4, help="list s = j/(2*grid)")
    fp.set_defaults(func=cmd_fixedpoints)

    pd = sub.add_parser("plotdata", help="tabulate a function or the residual sweep")
    g = pd.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", help=src_help + ", f, or A:t")
    g.add_argument("--residual-sweep", type=int, nargs=2, metavar=("T0", "T1"))
    pd.add_argument("--from", dest="lo", type=parse_rational)
    pd.add_argument("--to", dest="hi", type=parse_rational)
    pd.add_argument("--samples", type=int, default=16)
    pd.add_argument("--format", choices=("csv", "json"), default="csv")
    pd.add_argument("--out")
    pd.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StructureError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
