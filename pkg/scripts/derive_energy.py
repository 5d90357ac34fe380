#!/usr/bin/env python3
"""Solve the energy matrix of a cataloged crystal and report how it was pinned down.

    python3 scripts/derive_energy.py a2-basic
    python3 scripts/derive_energy.py a3-basic --json
"""
import argparse
import json

from crystalrr.crystal import A2_TABLE, EnergyMatrix, calibrate, catalog, tensor_square
from crystalrr.rules import check_order_compat, check_triangle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("case", nargs="?", default="a2-basic",
                    choices=["a2-basic", "a3-basic", "a1-four-color", "a1-three-color"])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    entry = catalog(args.case)
    g = entry.graph
    E = entry.matrix
    comps = tensor_square(g).components()
    alph = E.alphabet
    desc = [alph.label(c) for c in reversed(alph.order)]
    info = {
        "case": args.case,
        "colors": alph.labels(),
        "order_largest_first": desc,
        "ground": alph.label(alph.ground) if alph.ground is not None else None,
        "weights": {alph.label(c): [str(x) for x in alph.weight(c).coords] for c in range(alph.size)},
        "tensor_square_components": len(comps),
        "triangle": check_triangle(E)[0],
        "order_compatible": check_order_compat(E)[0],
        "matrix": E.rows(),
    }
    if args.case == "a2-basic":
        hits = calibrate(g, EnergyMatrix.from_rows(g.alphabet, A2_TABLE))
        info["matching_conventions"] = [f"left_first={c.left_first}, zero_step={c.zero_step}" for c in hits]
    if args.json:
        print(json.dumps(info, indent=2))
        return
    for k, v in info.items():
        if k != "matrix":
            print(f"{k}: {v}")
    print(E.format())


if __name__ == "__main__":
    main()
