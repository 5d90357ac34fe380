"""The identity catalog and loading of user-defined cases."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from ..crystal import CatalogEntry, CrystalGraph, EnergyMatrix, catalog, order_from_energy, solve_energy
from ..partitions import Alphabet, Specialization, Weight
from ..qseries import BINOMIAL, Factor, ProductSide, partitions_product, residue_product
from ..rules import DifferenceRuleSet, ForbiddenPattern, build_rules, parse_pattern

ASSERT = "assert"
EXPLORE = "explore"


class CaseError(ValueError):
    """Configuration problem: unknown case, malformed file, bad specialization."""


@dataclass(frozen=True)
class IdentityCase:
    name: str
    entry: CatalogEntry
    rules: DifferenceRuleSet
    spec: Specialization
    product: ProductSide | None
    mode: str = ASSERT
    default_order: Fraction = Fraction(20)
    note: str = ""
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.mode not in (ASSERT, EXPLORE):
            raise CaseError(f"mode must be {ASSERT!r} or {EXPLORE!r}")
        if self.mode == ASSERT and self.product is None:
            raise CaseError(f"assert-mode case {self.name!r} needs a product side")

    @property
    def alphabet(self) -> Alphabet:
        return self.entry.alphabet

    @property
    def has_path_model(self) -> bool:
        a = self.alphabet.ground
        return self.entry.derived and a is not None and self.entry.matrix(a, a) == 0


def _mp3_extras(alph: Alphabet) -> list[ForbiddenPattern]:
    ix = alph.index
    return [
        ForbiddenPattern.of((1, ix("3")), (0, ix("5")), (0, ix("1"))),
        ForbiddenPattern.of((1, ix("9")), (1, ix("5")), (0, ix("7"))),
    ]


def _case(name, spec_fn, product, mode=ASSERT, order=20, extras=None, note="", description=""):
    entry = catalog(name)
    rules = build_rules(entry.matrix, extras(entry.alphabet) if extras else ())
    return IdentityCase(
        name, entry, rules, spec_fn(entry.alphabet), product, mode, Fraction(order), note, description
    )


def _principal(m=None) -> Callable[[Alphabet], Specialization]:
    return lambda alph: Specialization.principal(alph, m)


_CASES: dict[str, Callable[[], IdentityCase]] = {
    "a2-basic": lambda: _case(
        "a2-basic", _principal(3), partitions_product(), order=30,
        description="basic A2(1) module, energy matrix solved from the crystal",
    ),
    "a3-basic": lambda: _case(
        "a3-basic", _principal(4), partitions_product(), order=25,
        description="basic A3(1) module, energy matrix solved from the crystal",
    ),
    "a1-four-color": lambda: _case(
        "a1-four-color", _principal(2), partitions_product(), mode=EXPLORE, order=30,
        note="open question: candidate product shown for comparison, never asserted",
        description="four-color A1(1) crystal, tabulated matrix",
    ),
    "a1-three-color": lambda: _case(
        "a1-three-color", _principal(2), residue_product(2, [1]), order=40,
        description="almost perfect three-color chain, principal specialization",
    ),
    "capparelli": lambda: _case(
        "capparelli",
        lambda alph: Specialization.from_labels(alph, 3, {"1": 2, "2": 0, "3": -2}, "(1,2)"),
        residue_product(6, [1, 3, 5, 6], BINOMIAL), order=40,
        description="three-color chain, (1,2)-specialization (Capparelli)",
    ),
    "rr-single": lambda: _case(
        "rr-single", _principal(1), residue_product(5, [1, 4]), order=40,
        note="product side is the classical Rogers-Ramanujan partner, supplied externally",
        description="E = (2): difference-two partitions",
    ),
    "distinct-single": lambda: _case(
        "distinct-single", _principal(1), residue_product(1, [0], BINOMIAL), order=40,
        description="E = (1): distinct parts",
    ),
    "half-int-distinct": lambda: _case(
        "half-int-distinct", _principal(2),
        ProductSide((Factor(1, (0,), BINOMIAL, Fraction(1, 2)),)), order=40,
        description="E = ((1,1),(0,1)): distinct half-integers",
    ),
    "half-int-diff3": lambda: _case(
        "half-int-diff3", _principal(2), None, mode=EXPLORE, order=30,
        note="no product formula known",
        description="E = ((2,2),(1,2)): half-integers with difference-three conditions",
    ),
    "mp3-gamma-prime": lambda: _case(
        "mp3-gamma-prime", _principal(3), residue_product(3, [1, 2]), order=30, extras=_mp3_extras,
        description="eight colors without the ground letter, plus two three-part patterns",
    ),
}

CASE_NAMES = tuple(sorted(_CASES))
_built: dict[str, IdentityCase] = {}


def get_case(name: str) -> IdentityCase:
    if name not in _CASES:
        raise CaseError(f"unknown case {name!r}; known: {', '.join(CASE_NAMES)}")
    if name not in _built:
        _built[name] = _CASES[name]()
    return _built[name]


def all_cases() -> list[IdentityCase]:
    return [get_case(n) for n in CASE_NAMES]


# --- user-defined cases -----------------------------------------------------

def _spec_from_json(alph: Alphabet, data) -> Specialization:
    if data is None or data == "principal":
        return Specialization.principal(alph)
    if isinstance(data, dict) and data.get("kind", "shifts") == "principal":
        return Specialization.principal(alph, data.get("m"))
    try:
        shifts = {str(k): Fraction(str(v)) for k, v in data["shifts"].items()}
        return Specialization.from_labels(alph, int(data["m"]), shifts, data.get("name", "custom"))
    except (KeyError, TypeError) as exc:
        raise CaseError(f"bad specialization: {exc}") from exc


def _entry_from_json(name: str, data: dict) -> CatalogEntry:
    if "crystal" in data:
        g = CrystalGraph.from_json(data["crystal"])
        E = solve_energy(g)
        if "order" not in data["crystal"]:
            g = g.with_alphabet(g.alphabet.with_order(order_from_energy(E)))
        return CatalogEntry(name, E.with_alphabet(g.alphabet), g, derived=True)
    if "matrix" not in data:
        raise CaseError("case file needs either 'crystal' or 'matrix'")
    labels = [str(c) for c in data.get("colors", range(1, len(data["matrix"]) + 1))]
    weights = None
    rank = 0
    if "weights" in data:
        weights = [Weight(tuple(Fraction(str(x)) for x in w)) for w in data["weights"]]
        rank = weights[0].rank if weights else 0
    alph = Alphabet.build(labels, weights, descending=data.get("color_order"), ground=data.get("ground"), rank=rank)
    E = EnergyMatrix.from_rows(alph, data["matrix"])
    if "color_order" not in data:
        E = E.with_alphabet(alph.with_order(order_from_energy(E)))
    return CatalogEntry(name, E)


def case_from_json(data: dict) -> IdentityCase:
    try:
        name = str(data.get("name", "custom"))
        entry = _entry_from_json(name, data)
        alph = entry.alphabet
        extras = [parse_pattern(alph, p) for p in data.get("extras", [])]
        rules = build_rules(entry.matrix, extras)
        spec = _spec_from_json(alph, data.get("specialization"))
        product = ProductSide.from_json(data["product"]) if data.get("product") is not None else None
        mode = data.get("mode", ASSERT if product is not None else EXPLORE)
        return IdentityCase(
            name, entry, rules, spec, product, mode, Fraction(str(data.get("order", 20))),
            data.get("note", ""), data.get("description", "loaded from file"),
        )
    except CaseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise CaseError(f"bad case file: {exc}") from exc


def load_case(path: str | Path) -> IdentityCase:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CaseError(f"cannot read {path}: {exc}") from exc
    return case_from_json(data)
