"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CoprimalityViolation, DarbouxError, ParseError, PreconditionFailed
from .parser import parse_system, read_system_text
from .report import Options, analyze, emit_report, read_options, verify_report

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

STAGES = {
    "curves": {"curves"},
    "expfactors": {"curves", "expfactors"},
    "integral": {"curves", "expfactors", "integral"},
    "puiseux": {"curves", "puiseux"},
    "phi": {"phi"},
    "all": {"curves", "expfactors", "integral", "puiseux", "phi", "numeric"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as a verification failure
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(kind):
    def conv(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"{text} must be positive")
        return value

    return conv


def _orbit(text):
    try:
        x0, y0, tend, h = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("orbit must be x0,y0,t_end,h") from None
    if tend <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("t_end and h must be positive")
    return (x0, y0, tend, h)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="darboux", description="Darboux analysis of planar polynomial systems")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in STAGES:
        p = sub.add_parser(name)
        p.add_argument("input", help="system file (dx = ..., dy = ...)")
        p.add_argument("--max-degree", type=_positive(int), dest="max_degree")
        p.add_argument("--exp-degree", type=_positive(int), dest="exp_degree")
        p.add_argument("--exp-power", type=_positive(int), dest="exp_power")
        p.add_argument("--order", type=_positive(int))
        p.add_argument("--precision", type=_positive(int), help="mantissa bits for orbits (53 = double)")
        p.add_argument("--orbit", type=_orbit, action="append", default=[], help="x0,y0,t_end,h")
        p.add_argument("--out")
    p = sub.add_parser("verify")
    p.add_argument("input", help="report produced by this tool")
    return parser


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verify(path) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            report = json.load(fh)
        failures = verify_report(report)
    except (OSError, ValueError, KeyError, TypeError, ParseError) as exc:
        print(f"error: cannot read report: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for f in failures:
        print(f"FAILED {f}", file=sys.stderr)
    if failures:
        return EXIT_VERIFY
    print("report verified")
    return EXIT_OK


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "verify":
        return _verify(args.input)
    try:
        with open(args.input, encoding="utf-8") as fh:
            spec = read_system_text(fh.read())
        system = parse_system(spec)
        opts = read_options(spec.options, Options())
    except (OSError, ParseError, CoprimalityViolation, PreconditionFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for name in ("max_degree", "exp_degree", "exp_power", "order", "precision"):
        if getattr(args, name) is not None:
            setattr(opts, name, getattr(args, name))
    if args.orbit:
        opts.orbits = list(args.orbit)
    if args.command == "phi" and not opts.phi:
        print("error: the system file has no option.phi.* lines", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = analyze(system, opts, STAGES[args.command])
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DarbouxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    _write(emit_report(report), args.out)
    failed = [s for s in ("curves", "exponential_factors", "first_integrals") for e in report.get(s, []) if not e["verified"]]
    phi = report.get("phi")
    if failed or (phi and phi.get("verdict") != "invariant"):
        return EXIT_VERIFY
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
