"""Command-line interface.

Exit codes: 0 success, 1 check-suite failure, 2 usage or domain error.
All output is deterministic for fixed flags; version metadata is only
emitted behind --meta.
"""
from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from fractions import Fraction

from . import __version__, analysis, checks, counting, eca, fractal, render, singular
from .errors import DomainError, OddRuleCodeError, ResourceLimitError
from .quadratic import (
    BitStream,
    Dyadic,
    Generator,
    Periodic,
    QSqrt5,
    Zeros,
    bits_of_fraction,
)

SIMULATE_STEP_GUARD = 4096
DIRECT_COUNT_GUARD = 1 << 14
PLOT_DEPTH_GUARD = 20


def _meta_comments(args) -> list[str]:
    return [f"rule150 {__version__}"] if args.meta else []


def _write_text(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _write_bytes(data: bytes, path: str) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _emit_json(obj, args) -> None:
    if args.meta:
        obj = {"meta": f"rule150 {__version__}", **obj} if isinstance(obj, dict) else obj
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# -- x-spec parsing ----------------------------------------------------------


def parse_x_spec(spec: str) -> BitStream:
    """Accepted forms: m/2^i or p/q rationals, bits=<word>[(<period>)],
    random:<seed>."""
    if spec.startswith("random:"):
        return BitStream((), Generator(int(spec.split(":", 1)[1])))
    if spec.startswith("bits="):
        body = spec[5:]
        period: tuple[int, ...] = ()
        if "(" in body:
            if not body.endswith(")"):
                raise DomainError(f"unclosed period in {spec!r}")
            body, rest = body.split("(", 1)
            period = _parse_word(rest[:-1])
            if not period:
                raise DomainError("period must be nonempty")
        head = _parse_word(body)
        if period:
            return BitStream(head, Periodic(period))
        return BitStream(head, Zeros())
    if "/" in spec:
        num, den = spec.split("/", 1)
        return bits_of_fraction(Fraction(int(num), int(den)))
    return bits_of_fraction(Fraction(int(spec)))


def _parse_word(s: str) -> tuple[int, ...]:
    if not all(ch in "01" for ch in s):
        raise DomainError(f"not a binary word: {s!r}")
    return tuple(int(ch) for ch in s)


def _parse_eps(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/", 1)
        eps = Fraction(int(num), int(den))
    else:
        eps = Fraction(Decimal(s))
    if eps <= 0:
        raise DomainError("eps must be positive")
    return eps


# -- subcommands -------------------------------------------------------------


def _cmd_simulate(args) -> int:
    if not 0 <= args.steps <= SIMULATE_STEP_GUARD:
        raise DomainError(f"steps must be in [0, {SIMULATE_STEP_GUARD}]")
    rows = eca.evolve(eca.single_site_seed(), args.steps, args.rule)
    if args.format == "csv":
        cells = sorted(
            (t, i) for t, row in enumerate(rows) for i in row.ones()
        )
        text = "".join(f"# {c}\n" for c in _meta_comments(args))
        text += render.csv_table(("i", "t"), ((i, t) for t, i in cells))
        _write_text(text, args.out)
        return 0
    bitmap = fractal.light_cone_bitmap(rows)
    if args.binary:
        _write_bytes(render.pbm_p4(bitmap, _meta_comments(args)), args.out)
    else:
        _write_text(render.pbm_p1(bitmap, _meta_comments(args)), args.out)
    return 0


def _cmd_counts(args) -> int:
    n = args.upto
    if n < 0:
        raise DomainError("upto must be >= 0")
    if args.method == "direct" and n > DIRECT_COUNT_GUARD:
        raise DomainError(f"direct method guard is n <= {DIRECT_COUNT_GUARD}")
    if args.mode == "num":
        if args.method == "direct":
            values = counting.num_series(n)
        elif args.method == "matrix":
            values = [counting.num_matrix(i) for i in range(n + 1)]
        else:
            values = [counting.num_cluster(i) for i in range(n + 1)]
    else:
        if args.method == "direct":
            values = counting.cum_series(n)
        elif args.method == "matrix":
            values = [counting.cum_decompose(i + 1) for i in range(n + 1)]
        else:
            values = _cum_closed_series(n)
    text = "".join(f"# {c}\n" for c in _meta_comments(args))
    text += render.csv_table(("n", "value"), enumerate(values))
    _write_text(text, args.out)
    return 0


def _cum_closed_series(n: int) -> list[int]:
    # decomposition over binary digits, power-of-two terms from the
    # exact closed form instead of matrix powers
    closed = {}

    def cum_pow2_closed_int(j: int) -> int:
        if j == 0:
            return 1
        if j not in closed:
            closed[j] = counting.cum_pow2_closed(j).to_fraction().numerator
        return closed[j]

    out = []
    for m in range(1, n + 2):
        digits = bin(m)[2:]
        k = len(digits)
        row = counting.A_ROW
        total = 0
        for i, ch in enumerate(digits, start=1):
            if ch == "1":
                total += (row[0] + row[1]) * cum_pow2_closed_int(k - i)
                row = counting.M1.apply_row(row)
            else:
                row = counting.M0.apply_row(row)
        out.append(total)
    return out


def _cmd_eval(args) -> int:
    stream = parse_x_spec(args.x)
    lines = list(_meta_comments(args))
    if isinstance(stream.tail, Generator):
        enc = singular.eval_stream_enclosure(stream, args.eps)
        lines.append(f"enclosure_lo = {enc.lo.to_decimal(args.digits)}")
        lines.append(f"enclosure_hi = {enc.hi.to_decimal(args.digits)}")
    else:
        value = singular.eval_bitstream_exact(stream)
        lines.append(value.to_decimal(args.digits))
        lines.append(f"exact = ({value.p}, {value.q}, {value.d})")
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_plot_f(args) -> int:
    if not 1 <= args.depth <= PLOT_DEPTH_GUARD:
        raise DomainError(f"depth must be in [1, {PLOT_DEPTH_GUARD}]")
    d = args.depth
    points = []
    for m in range((1 << d) + 1):
        x = Dyadic(m, d)
        fx = singular.eval_recursive_dyadic(x)
        points.append(
            (
                QSqrt5.from_fraction(x.fraction).to_decimal(args.digits),
                fx.to_decimal(args.digits),
            )
        )
    if args.format == "csv":
        text = "".join(f"# {c}\n" for c in _meta_comments(args))
        text += render.csv_table(("x", "F"), points)
        _write_text(text, args.out)
        return 0
    background = fractal.prefractal(min(d, 12)) if args.overlay else None
    _write_text(render.svg_curve(points, background), args.out)
    return 0


def _cmd_limitset(args) -> int:
    bitmap = fractal.prefractal(args.k)
    if args.binary:
        _write_bytes(render.pbm_p4(bitmap, _meta_comments(args)), args.out)
    else:
        _write_text(render.pbm_p1(bitmap, _meta_comments(args)), args.out)
    return 0


def _cmd_dimension(args) -> int:
    slope = fractal.boxcount_slope(args.jmin, args.jmax)
    _emit_json(
        {"jmin": args.jmin, "jmax": args.jmax, "slope": slope,
         "target": fractal.DIMENSION_TARGET},
        args,
    )
    return 0


def _cmd_quotients(args) -> int:
    stream = parse_x_spec(args.x)
    if not isinstance(stream.tail, Zeros):
        raise DomainError("quotient probes need a dyadic point")
    from .quadratic import dyadic_of

    x = dyadic_of(stream.head)
    rows = analysis.quotient_report(x, args.mmax, args.side)
    payload = [r.to_row(args.digits) for r in rows]
    if args.meta:
        payload = {"meta": f"rule150 {__version__}", "rows": payload}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_check(args) -> int:
    if args.suite == "all":
        reports = checks.check_all()
        combined = {
            "suite": "all",
            "reports": [r.to_dict() for r in reports],
            "passed": sum(r.passed for r in reports),
            "failed": sum(r.failed for r in reports),
            "exit_code": 0 if all(r.exit_code == 0 for r in reports) else 1,
        }
        _emit_json(combined, args)
        return combined["exit_code"]
    report = checks.SUITES[args.suite]()
    _emit_json(report.to_dict(), args)
    return report.exit_code


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rule150",
        description="Rule 150 patterns, exact counts, and the singular function",
    )
    parser.add_argument(
        "--meta", action="store_true", help="include version metadata in output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="spatio-temporal pattern as PBM or CSV")
    p.add_argument("--rule", type=int, default=150)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("pbm", "csv"), default="pbm")
    p.add_argument("--binary", action="store_true", help="emit P4 instead of P1")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("counts", help="num/cum tables by any method")
    p.add_argument("--mode", choices=("num", "cum"), required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--method", choices=("direct", "matrix", "closed"), default="direct")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_counts)

    p = sub.add_parser("eval", help="evaluate F at a point")
    p.add_argument("--x", required=True, metavar="SPEC",
                   help="m/2^i, p/q, bits=<word>[(<period>)], or random:<seed>")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--eps", type=_parse_eps, default=Fraction(1, 10**9))
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("plot-f", help="sample F at all dyadics of a given depth")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--overlay", action="store_true",
                   help="draw the prefractal behind the SVG curve")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_plot_f)

    p = sub.add_parser("limitset", help="prefractal bitmap at level k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--binary", action="store_true", help="emit P4 instead of P1")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_limitset)

    p = sub.add_parser("dimension", help="box-counting slope from exact counts")
    p.add_argument("--jmin", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.set_defaults(func=_cmd_dimension)

    p = sub.add_parser("quotients", help="difference-quotient probes at a dyadic")
    p.add_argument("--x", required=True, metavar="SPEC")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--side", choices=("left", "right", "both", "symmetric"),
                   default="both")
    p.add_argument("--digits", type=int, default=12)
    p.set_defaults(func=_cmd_quotients)

    p = sub.add_parser("check", help="run a named invariant suite")
    p.add_argument("--suite", choices=(*checks.SUITES, "all"), required=True)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, OddRuleCodeError, ResourceLimitError) as exc:
        print(f"rule150: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"rule150: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
