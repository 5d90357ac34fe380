#!/usr/bin/env python3
"""Push the two open cases further than the harness defaults.

For the four-color A1 crystal, find how far its principally specialized
sum side agrees with prod (1-q^r)^-1.  For the half-integer
difference-three case, dump the series and compare it with a few simple
products over residue classes mod 2..12 (in q^(1/2) steps).

    python3 scripts/explore_four_color.py --order 80
"""
import argparse
from fractions import Fraction
from itertools import combinations

from crystalrr.harness import get_case
from crystalrr.qseries import BINOMIAL, GEOMETRIC, Factor, ProductSide, expand_product, format_exponent, gen_function


def q(k2: int) -> str:
    e = format_exponent(k2)
    return f"q^{e}" if k2 % 2 == 0 else f"q^({e})"


def agreement(a, b) -> int:
    k = a.first_mismatch(b)
    return a.order2 if k is None else k - 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--order", type=int, default=60)
    ap.add_argument("--max-modulus", type=int, default=12)
    args = ap.parse_args()

    four = get_case("a1-four-color")
    lhs = gen_function(four.rules, four.spec, args.order)
    rhs = expand_product(four.product, args.order)
    k = agreement(lhs, rhs)
    print(f"a1-four-color: sum side agrees with {four.product.describe()} through {q(k)}"
          f" (checked to q^{args.order})")

    diff3 = get_case("half-int-diff3")
    series = gen_function(diff3.rules, diff3.spec, Fraction(args.order, 2))
    print(f"half-int-diff3: {series}")
    # products over r + 1/2 in residue classes: the series lives on multiples of q^(1/2)
    best = []
    for mod in range(2, args.max_modulus + 1):
        for size in range(1, mod):
            for res in combinations(range(mod), size):
                for form in (GEOMETRIC, BINOMIAL):
                    ps = ProductSide((Factor(mod, res, form, Fraction(1, 2)),))
                    got = agreement(series, expand_product(ps, series.order))
                    best.append((got, ps.describe()))
    best.sort(reverse=True)
    for got, desc in best[:5]:
        print(f"  {desc}: agrees through {q(got)}")


if __name__ == "__main__":
    main()
