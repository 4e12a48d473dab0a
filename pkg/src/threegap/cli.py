"""Command-line interface: ``threegap expand|gaps|scan|verify ALPHA ...``.

ALPHA is one of::

    surd:(p+q*sqrt(d))/r      e.g. surd:(1+1*sqrt(5))/2
    cf:[a0;a1,...,(b1,...,bj)] e.g. cf:[0;(1,2)]
    rule:natural              a_0 = 0, a_n = n

Exit codes: 0 success, 1 usage or parse error, 2 verification disagreement,
3 precision exhausted.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cf import (
    RULES,
    PartialQuotientSource,
    PeriodicSource,
    RuleSource,
    SurdSource,
    build_table,
    constant_type_bound,
    rule_source,
)
from .errors import InvalidInput, PrecisionExhausted, ThreeGapError
from .exact import DEFAULT_PRECISION, Interval, QuadraticSurd, format_decimal, surd_normalize
from .gaps import LONG, gap_structure, ratio, ratio_scan
from .verify import verify

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_PRECISION = 0, 1, 2, 3
CSV_HEADER = ["m", "k", "r", "s", "epsilon", "branch", "d_max", "d_min", "ratio", "ratio_err"]


class ParseError(InvalidInput):
    pass


# -- alpha specifications ----------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|sqrt|\S)")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        out.append(m.group(1))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {expected or 'a token'}")
        if expected is not None and tok != expected:
            raise ParseError(f"unexpected token {tok!r}, expected {expected!r}")
        self.i += 1
        return tok

    def integer(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        tok = self.peek()
        if tok is None or not tok.isdigit():
            what = "end of input" if tok is None else f"token {tok!r}"
            raise ParseError(f"unexpected {what}, expected an integer")
        self.i += 1
        return sign * int(tok)

    def end(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"unexpected trailing token {self.peek()!r}")


def _parse_surd(body: str) -> SurdSource:
    c = _Cursor(body)
    c.take("(")
    p = c.integer(signed=True)
    op = c.peek()
    if op not in ("+", "-"):
        raise ParseError(f"unexpected token {op!r}, expected '+' or '-'")
    c.take()
    q = c.integer() * (1 if op == "+" else -1)
    c.take("*")
    c.take("sqrt")
    c.take("(")
    d = c.integer()
    c.take(")")
    c.take(")")
    c.take("/")
    r = c.integer(signed=True)
    c.end()
    return SurdSource(surd_normalize(p, q, d, r))


def _int_list(c: _Cursor, stop: str) -> list[int]:
    vals = [c.integer()]
    while c.peek() == ",":
        c.take(",")
        if c.peek() == "(":
            break
        vals.append(c.integer())
    if c.peek() not in (stop, "("):
        raise ParseError(f"unexpected token {c.peek()!r}, expected ',' or {stop!r}")
    return vals


def _parse_cf(body: str) -> PeriodicSource:
    c = _Cursor(body)
    c.take("[")
    pre: list[int] = []
    if c.peek() != "(":
        pre.append(c.integer(signed=True))
        c.take(";")
        if c.peek() != "(":
            pre += _int_list(c, "]")
    c.take("(")
    period = [c.integer()]
    while c.peek() == ",":
        c.take(",")
        period.append(c.integer())
    c.take(")")
    c.take("]")
    c.end()
    return PeriodicSource(pre, period)


@dataclass(frozen=True)
class AlphaSpec:
    kind: str
    body: str

    @classmethod
    def parse(cls, text: str) -> "AlphaSpec":
        kind, sep, body = text.strip().partition(":")
        if not sep or kind not in ("surd", "cf", "rule"):
            raise ParseError(f"unknown alpha kind {kind!r}; use surd:, cf: or rule:")
        spec = cls(kind, body.strip())
        spec.source()
        return spec

    def source(self) -> PartialQuotientSource:
        if self.kind == "surd":
            return _parse_surd(self.body)
        if self.kind == "cf":
            return _parse_cf(self.body)
        if self.body not in RULES:
            raise ParseError(f"unknown rule {self.body!r}")
        return rule_source(self.body)

    def __str__(self) -> str:
        return f"{self.kind}:{self.body}"


def render_alpha(src: PartialQuotientSource) -> str:
    """Canonical text for a source; ``AlphaSpec.parse`` reads it back."""
    if isinstance(src, SurdSource):
        x = src.alpha
        sign = "+" if x.q >= 0 else "-"
        return f"surd:({x.p}{sign}{abs(x.q)}*sqrt({x.d}))/{x.r}"
    if isinstance(src, PeriodicSource):
        period = "(" + ",".join(map(str, src.period)) + ")"
        if not src.preperiod:
            return f"cf:[{period}]"
        rest = [str(a) for a in src.preperiod[1:]] + [period]
        return f"cf:[{src.preperiod[0]};{','.join(rest)}]"
    if isinstance(src, RuleSource):
        return f"rule:{src.name}"
    raise InvalidInput(f"cannot render {src!r}")


# -- rendering ---------------------------------------------------------------


def fmt(value, digits: int) -> str:
    if isinstance(value, Interval):
        return format_decimal(value.mid, digits)
    if isinstance(value, QuadraticSurd):
        return format_decimal(value.to_interval(4 * digits + 16).mid, digits)
    return format_decimal(Fraction(value), digits)


def fmt_err(value, digits: int) -> str:
    if isinstance(value, Interval):
        return format_decimal(value.radius, 3, round_up=True)
    return "0"


# -- commands ----------------------------------------------------------------


def cmd_expand(args, out) -> int:
    if args.terms < 0:
        raise ParseError("--terms must be >= 0")
    table = build_table(args.alpha.source(), args.terms, precision=args.precision_bits)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "a", "p", "q", "eta", "eta_err"])
    for n, a, p, q, eta in table.rows():
        w.writerow([n, a, p, q, fmt(eta, args.digits), fmt_err(eta, args.digits)])
    return EXIT_OK


def cmd_gaps(args, out) -> int:
    if args.m < 1:
        raise ParseError("--m must be >= 1")
    table = build_table(args.alpha.source(), 0, precision=args.precision_bits)
    gs = gap_structure(args.m, table)
    pt = ratio(args.m, table)
    _, k, r, s = gs.decomposition
    print(f"m={args.m} k={k} r={r} s={s}", file=out)
    for e in gs.entries:
        line = f"{e.tag:<5} length={fmt(e.length, args.digits)} count={e.count}"
        if e.tag == LONG and e.degenerate:
            line += "  degenerate (q_k = s+1)"
        print(line, file=out)
    print(f"d_max={fmt(pt.d_max, args.digits)} d_min={fmt(pt.d_min, args.digits)}", file=out)
    print(f"ratio={fmt(pt.ratio, args.digits)} ratio_err={fmt_err(pt.ratio, args.digits)} "
          f"epsilon={pt.epsilon} branch={pt.branch}", file=out)
    return EXIT_OK


def write_scan_csv(points, stream, digits: int = 12) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for pt in points:
        _, k, r, s = pt.decomposition
        w.writerow([pt.m, k, r, s, pt.epsilon, pt.branch, fmt(pt.d_max, digits),
                    fmt(pt.d_min, digits), fmt(pt.ratio, digits), fmt_err(pt.ratio, digits)])


def cmd_scan(args, out) -> int:
    src = args.alpha.source()
    table = build_table(src, 0, precision=args.precision_bits)
    if args.convergents_only:
        if args.max_k is None and args.max_m is None:
            raise ParseError("--convergents-only needs --max-m or --max-k")
        if args.max_k is not None and args.max_k < 0:
            raise ParseError("--max-k must be >= 0")
    elif args.max_m is None or args.max_m < 1:
        raise ParseError("--max-m must be >= 1")
    if args.max_m is not None and args.max_m < 1:
        raise ParseError("--max-m must be >= 1")
    res = ratio_scan(table, args.max_m, convergents_only=args.convergents_only, k_max=args.max_k)
    if args.csv == "-":
        write_scan_csv(res.points, out, args.digits)
    else:
        with open(args.csv, "w", newline="") as fh:
            write_scan_csv(res.points, fh, args.digits)
    last_k = max(pt.decomposition.k for pt in res.points)
    bound = constant_type_bound(src, last_k + 2)
    line = (f"points={len(res.points)} sup_ratio={fmt(res.sup, args.digits)} "
            f"argmax_m={res.argmax} B_horizon={bound.bound} certified={bound.certified}")
    if bound.certified:
        line += f" bound_B_plus_2={bound.bound + 2}"
    print(line, file=sys.stderr if args.csv == "-" else out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.max_m < 1:
        raise ParseError("--max-m must be >= 1")
    report = verify(args.alpha.source(), args.max_m, precision=args.precision_bits)
    print(report.summary(), file=out)
    if not report.exact:
        print("note: interval mode; each match is a certified overlap of enclosures, "
              "with every closed-form gap length separated from the others", file=out)
    return EXIT_OK if report.ok else EXIT_DISAGREE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _alpha(text: str) -> AlphaSpec:
    try:
        return AlphaSpec.parse(text)
    except ThreeGapError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("alpha", type=_alpha, help="surd:(p+q*sqrt(d))/r | cf:[a0;...,(b...)] | rule:natural")
    common.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION,
                        help="starting interval precision (default %(default)s)")
    common.add_argument("--digits", type=int, default=12, help="significant digits in output")

    parser = _Parser(prog="threegap", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="partial quotients, convergents and eta")
    p.add_argument("--terms", type=int, default=10)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("gaps", parents=[common], help="three-gap structure for one m")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("scan", parents=[common], help="ratio d_max/d_min for a range of m, as CSV")
    p.add_argument("--max-m", type=int)
    p.add_argument("--max-k", type=int, help="with --convergents-only: visit k = 0..K")
    p.add_argument("--csv", default="-", help="output path (default stdout)")
    p.add_argument("--convergents-only", action="store_true", help="only m = q_{k+1}")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="closed forms against the brute-force oracle")
    p.add_argument("--max-m", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ThreeGapError, OSError) as exc:
        print(f"threegap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
