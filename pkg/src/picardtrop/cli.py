"""Command-line interface.

Subcommands:

  invariants INPUT   invariant values and valuations (+ tropical point)
  classify   INPUT   tree type, and the marked type for (4,1)/root inputs
  lengths    INPUT   edge lengths of the tree
  picard     INPUT   full report including the Picard reduction type
  oracle     INPUT   metric tree reconstructed from the roots (root inputs)
  verify             classifier-vs-oracle equivalence over the families
  selftest           regenerate/verify caches and every recorded constant

INPUT is a path to a form-input JSON file, "-" for stdin, or an inline JSON
object.  Exit codes: 0 success, 1 usage, 2 parse error, 3 non-separable
input, 4 verification mismatch, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ExprSyntaxError,
    InternalConsistencyError,
    NonSeparableError,
    PicardTropError,
    UnsupportedCharacteristicError,
    VerificationMismatchError,
)
from .report import build_report, parse_form_input, render_dot, render_table

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NONSEPARABLE = 3
EXIT_MISMATCH = 4
EXIT_INTERNAL = 5


def _read_input(arg: str) -> dict:
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        path = Path(arg)
        if not path.exists():
            raise PicardTropError(f"no such input file: {arg}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprSyntaxError(f"input is not valid JSON: {exc.msg}", exc.pos) from exc


def _emit(rep: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rep, indent=2, sort_keys=True))
    elif fmt == "table":
        print(render_table(rep), end="")
    elif fmt == "dot":
        print(render_dot(rep), end="")
    else:
        raise PicardTropError(f"unknown format {fmt!r}")


def _report_command(stage: str, args) -> int:
    fi = parse_form_input(_read_input(args.input))
    rep = build_report(fi, stage)
    _emit(rep, args.format)
    return EXIT_OK


def _verify_command(args) -> int:
    from .treeoracle import FAMILIES
    from .verify import format_summary, run_verify

    if args.families == "all":
        families = FAMILIES
    else:
        families = tuple(f.strip() for f in args.families.split(","))
        bad = [f for f in families if f not in FAMILIES]
        if bad:
            raise PicardTropError(f"unknown families {bad}; choose from {FAMILIES}")
    summary = run_verify(families, args.samples, args.seed, args.jobs)
    print(format_summary(summary), end="")
    if summary.failures:
        print("failure transcripts (replayable):", file=sys.stderr)
        for tr in summary.failures[:20]:
            print(json.dumps(tr, sort_keys=True), file=sys.stderr)
        raise VerificationMismatchError(
            f"{len(summary.failures)} of {summary.total} samples disagree"
        )
    return EXIT_OK


def _selftest_command(args) -> int:
    from .selftest import format_checks, run_selftest

    checks = run_selftest(regen=args.regen)
    print(format_checks(checks), end="")
    if not all(c.ok for c in checks):
        raise InternalConsistencyError("selftest found failing checks")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picardtrop",
        description=(
            "Exact tropical invariants of binary quintics and (4,1)-forms;"
            " tree types, edge lengths and Picard reduction types."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for stage, helptext in (
        ("invariants", "invariant values and valuations"),
        ("classify", "tree type (and marked type where applicable)"),
        ("lengths", "edge lengths of the metric tree"),
        ("picard", "full report including the Picard reduction type"),
        ("oracle", "metric tree reconstructed from the roots"),
    ):
        p = sub.add_parser(stage, help=helptext)
        p.add_argument("input", help="input JSON: path, '-' for stdin, or inline")
        p.add_argument(
            "--format",
            choices=("json", "table", "dot"),
            default="json",
            help="output format (default json)",
        )
        p.set_defaults(func=lambda a, s=stage: _report_command(s, a))

    v = sub.add_parser("verify", help="classifier-vs-oracle equivalence harness")
    v.add_argument("--families", default="all", help="comma list or 'all'")
    v.add_argument("--samples", type=int, default=250, help="samples per family")
    v.add_argument("--seed", type=int, default=1, help="sampling seed")
    v.add_argument("--jobs", type=int, default=None, help="worker processes")
    v.set_defaults(func=_verify_command)

    s = sub.add_parser("selftest", help="verify caches and recorded constants")
    s.add_argument(
        "--regen", action="store_true", help="rewrite the cache files from scratch"
    )
    s.set_defaults(func=_selftest_command)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonSeparableError as exc:
        print(f"non-separable input: {exc}", file=sys.stderr)
        return EXIT_NONSEPARABLE
    except VerificationMismatchError as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except UnsupportedCharacteristicError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PicardTropError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
