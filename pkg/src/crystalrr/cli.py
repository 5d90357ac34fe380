"""Command line entry point: ``crystalrr <command> ...``.

Exit codes: 0 when every assertion holds, 1 when one fails, 2 on a
configuration error (unknown case, unreadable file, divergent degree map).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .harness import (
    CASE_NAMES,
    CaseError,
    bijection_audit,
    get_case,
    load_case,
    run_all,
    verify,
)
from .qseries import DivergentSpecialization, gen_function

OK, FAILED, CONFIG = 0, 1, 2


def _order(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value < 0 or (2 * value).denominator != 1:
        raise argparse.ArgumentTypeError("order must be a nonnegative integer or half-integer")
    return value


def _emit(args, report) -> None:
    timing = not args.no_timing
    if args.json:
        print(json.dumps(report.to_dict(timing), sort_keys=True))
    else:
        print(report.render(timing))


def cmd_list(args) -> int:
    for name in CASE_NAMES:
        case = get_case(name)
        print(f"{name:18s} {case.mode:8s} order {case.default_order}  {case.description}")
    return OK


def cmd_verify(args) -> int:
    rep = verify(get_case(args.case), args.order, oracle=args.oracle)
    _emit(args, rep)
    return OK if rep.passed else FAILED


def cmd_load(args) -> int:
    rep = verify(load_case(args.file), args.order, oracle=args.oracle)
    _emit(args, rep)
    return OK if rep.passed else FAILED


def cmd_run_all(args) -> int:
    summary = run_all(args.order, oracle=args.oracle)
    timing = not args.no_timing
    if args.json:
        out = {
            "reports": [r.to_dict(timing) for r in summary.reports],
            "structure": [{"case": s.case, "checks": s.checks, "witnesses": s.witnesses} for s in summary.structure],
        }
        print(json.dumps(out, sort_keys=True))
    else:
        for r in summary.reports:
            print(r.render(timing))
        for s in summary.structure:
            print(s.render())
        bad = sum(not r.passed for r in summary.reports) + sum(not s.passed for s in summary.structure)
        print(f"{len(summary.reports)} cases, {len(summary.structure)} structural suites, {bad} failing")
    return summary.exit_code


def cmd_audit(args) -> int:
    rep = bijection_audit(get_case(args.case), args.boxes)
    _emit(args, rep)
    return OK if rep.passed else FAILED


def cmd_series(args) -> int:
    case = get_case(args.case)
    order = args.order if args.order is not None else case.default_order
    series = gen_function(case.rules, case.spec, order)
    if args.json:
        print(json.dumps({"case": case.name, "order": str(order), "series": series.to_json()}, sort_keys=True))
    else:
        print(series)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crystalrr", description="Crystal-derived difference conditions and q-series identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, oracle=True):
        p.add_argument("--order", type=_order, default=None, help="truncation order N (default: per case)")
        if oracle:
            p.add_argument("--oracle", action="store_true", help="also cross-check with brute-force enumeration")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--no-timing", action="store_true", help="omit wall time so output is reproducible byte for byte")

    p = sub.add_parser("list", help="list the identity catalog")
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("verify", help="compare the sum side with the product side")
    p.add_argument("case")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("run-all", help="verify every catalog case and run the structural checks")
    common(p)
    p.set_defaults(fn=cmd_run_all)

    p = sub.add_parser("audit", help="exhaustively check the path bijection up to a box budget")
    p.add_argument("case")
    p.add_argument("--boxes", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser("series", help="print the sum side of a case")
    p.add_argument("case")
    p.add_argument("--order", type=_order, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("load", help="verify a case described in a JSON file")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_load)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CaseError, DivergentSpecialization) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG


if __name__ == "__main__":
    sys.exit(main())
