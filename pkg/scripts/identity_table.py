#!/usr/bin/env python3
"""Verify every cataloged identity and print one row per case.

    python3 scripts/identity_table.py --order 20 --oracle
"""
import argparse

from crystalrr.harness import CASE_NAMES, get_case, verify
from crystalrr.qseries import format_exponent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--order", type=int, default=None, help="override every case's default order")
    ap.add_argument("--oracle", action="store_true", help="cross-check with brute-force enumeration")
    args = ap.parse_args()

    print(f"{'case':18s} {'mode':8s} {'N':>4s} {'verdict':9s} {'ms':>6s}  product / remark")
    for name in CASE_NAMES:
        case = get_case(name)
        rep = verify(case, args.order, oracle=args.oracle)
        remark = rep.product_formula or "(no product side)"
        if rep.agreement is not None:
            remark += f"  agrees through q^{format_exponent(rep.agreement)}"
        if rep.oracle:
            remark += f"  oracle {rep.oracle}"
        print(f"{name:18s} {case.mode:8s} {str(rep.order):>4s} {rep.verdict:9s} {rep.ms:6d}  {remark}")


if __name__ == "__main__":
    main()
