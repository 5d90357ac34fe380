"""Difference conditions generated by an energy matrix.

A forbidden pattern is a family of colored partitions indexed by ``i < 0``:
a cell ``(offset, color)`` stands for the part ``(i - offset)_color``.  From
an energy matrix ``E`` we forbid

* ``i_a i_b`` whenever ``E[a][b] * E[b][a] >= 1`` (same value), and
* ``(i-1)_a i_b`` whenever ``E[a][b] == 2`` (consecutive values),

plus any explicit extra patterns.  All offsets are 0 or 1, so membership is
decided by looking at two consecutive values at a time.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .crystal import EnergyMatrix
from .partitions import Alphabet, ColoredPartition, Part


@dataclass(frozen=True, order=True)
class ForbiddenPattern:
    cells: tuple[tuple[int, int], ...]  # sorted (offset, color id)

    def __post_init__(self):
        cells = tuple(sorted(self.cells))
        if not cells:
            raise ValueError("empty pattern")
        if any(off not in (0, 1) for off, _ in cells):
            raise ValueError("pattern offsets must be 0 or 1")
        if all(off == 1 for off, _ in cells):
            raise ValueError("pattern needs at least one cell at offset 0")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def of(cls, *cells: tuple[int, int]) -> "ForbiddenPattern":
        return cls(tuple(cells))

    @property
    def spans_two_values(self) -> bool:
        return any(off == 1 for off, _ in self.cells)

    def at(self, i: int) -> Counter:
        """The pattern instance at value ``i`` as a part multiset."""
        return Counter((i - off, c) for off, c in self.cells)

    def describe(self, alphabet: Alphabet) -> str:
        out = []
        # lower value first, as in the canonical listing
        for off, c in sorted(self.cells, key=lambda cell: (-cell[0], alphabet.part_key(0, cell[1]))):
            v = "i" if off == 0 else "(i-1)"
            out.append(f"{v}_{alphabet.label(c)}")
        return " ".join(out)


@dataclass(frozen=True)
class DifferenceRuleSet:
    matrix: EnergyMatrix
    patterns: frozenset[ForbiddenPattern]
    extras: tuple[ForbiddenPattern, ...] = ()

    @property
    def alphabet(self) -> Alphabet:
        return self.matrix.alphabet

    def sorted_patterns(self) -> list[ForbiddenPattern]:
        return sorted(self.patterns)

    def to_json(self) -> dict:
        lab = self.alphabet.label
        return {
            "colors": self.alphabet.labels(),
            "matrix": self.matrix.rows(),
            "extras": [[[off, lab(c)] for off, c in p.cells] for p in self.extras],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_rules(E: EnergyMatrix, extras: Iterable[ForbiddenPattern] = ()) -> DifferenceRuleSet:
    if not E.in_range():
        raise ValueError("energy matrix entries must lie in {0, 1, 2}")
    n = E.size
    extras = tuple(extras)
    for p in extras:
        for _, c in p.cells:
            if not 0 <= c < n:
                raise ValueError(f"extra pattern references unknown color id {c}")
    pats = set()
    for a, b in product(range(n), repeat=2):
        if E(a, b) * E(b, a) >= 1:
            pats.add(ForbiddenPattern.of((0, a), (0, b)))
        if E(a, b) == 2:
            pats.add(ForbiddenPattern.of((1, a), (0, b)))
    pats.update(extras)
    return DifferenceRuleSet(E, frozenset(pats), extras)


def parse_pattern(alphabet: Alphabet, cells: Sequence[Sequence]) -> ForbiddenPattern:
    return ForbiddenPattern(tuple((int(off), alphabet.index(str(lab))) for off, lab in cells))


def rules_from_json(alphabet: Alphabet, data: dict) -> DifferenceRuleSet:
    E = EnergyMatrix.from_rows(alphabet, data["matrix"])
    return build_rules(E, [parse_pattern(alphabet, p) for p in data.get("extras", [])])


def _contains(have: Counter, need: Counter) -> bool:
    return all(have[k] >= m for k, m in need.items())


def violations(counts: Counter, D: DifferenceRuleSet) -> list[tuple[ForbiddenPattern, int]]:
    """Every (pattern, i) whose instance is contained in the part multiset."""
    values = {v for (v, _), m in counts.items() if m > 0}
    candidates = sorted({v for v in values} | {v + 1 for v in values if v + 1 < 0})
    out = []
    for p in D.sorted_patterns():
        for i in candidates:
            if _contains(counts, p.at(i)):
                out.append((p, i))
    return out


def satisfies_counts(counts: Counter, D: DifferenceRuleSet) -> bool:
    values = {v for (v, _), m in counts.items() if m > 0}
    candidates = values | {v + 1 for v in values if v + 1 < 0}
    for p in D.patterns:
        for i in candidates:
            if _contains(counts, p.at(i)):
                return False
    return True


def satisfies(pi: ColoredPartition, D: DifferenceRuleSet) -> bool:
    """True when ``pi`` contains no instance of any forbidden pattern."""
    if pi.alphabet.colors != D.alphabet.colors:
        raise ValueError("partition and rule set use different alphabets")
    return satisfies_counts(pi.counts(), D)


def pair_admissible(x: Part, y: Part, D: DifferenceRuleSet) -> bool:
    """Whether the two-part partition ``x y`` avoids ``D``.

    Parts must be given with ``x <= y`` in the order on parts.  Without
    extras this is the gap criterion ``|i - j| >= E[a][b]``; with extras it
    falls back to full containment.
    """
    alph = D.alphabet
    if alph.part_key(*x) > alph.part_key(*y):
        raise ValueError("pair must be given in increasing order")
    if D.extras:
        return satisfies_counts(Counter([x, y]), D)
    (i, a), (j, b) = x, y
    return abs(i - j) >= D.matrix(a, b)


def adjacent_pairs_ok(pi: ColoredPartition, D: DifferenceRuleSet) -> bool:
    """Gap criterion on consecutive parts of the canonical listing."""
    lst = pi.listing()
    return all(abs(i - j) >= D.matrix(a, b) for (i, a), (j, b) in zip(lst, lst[1:]))


# --- structural checks on E ----------------------------------------------

def check_triangle(E: EnergyMatrix) -> tuple[bool, list[tuple[int, int, int]]]:
    """``E[a][c] <= E[a][b] + E[b][c]`` for all triples; returns failing triples."""
    n = E.size
    bad = [
        (a, b, c)
        for a, b, c in product(range(n), repeat=3)
        if E(a, c) > E(a, b) + E(b, c)
    ]
    return not bad, bad


def check_order_compat(E: EnergyMatrix, order: Sequence[int] | None = None) -> tuple[bool, list[tuple[int, int]]]:
    """``E[a][b] == 0`` implies ``a <= b`` in ``order`` (smallest first)."""
    if order is None:
        order = E.alphabet.order
    rank = {c: k for k, c in enumerate(order)}
    n = E.size
    bad = [(a, b) for a, b in product(range(n), repeat=2) if E(a, b) == 0 and rank[a] > rank[b]]
    return not bad, bad


def check_symmetry(E: EnergyMatrix, sigma: dict[int, int]) -> bool:
    n = E.size
    if sorted(sigma.get(c, c) for c in range(n)) != list(range(n)):
        raise ValueError("sigma is not a permutation of the colors")
    s = lambda c: sigma.get(c, c)  # noqa: E731
    return all(E(s(a), s(b)) == E(a, b) for a, b in product(range(n), repeat=2))


def permutation_from_cycles(alphabet: Alphabet, cycles: Iterable[Sequence[str]]) -> dict[int, int]:
    sigma: dict[int, int] = {}
    for cyc in cycles:
        ids = [alphabet.index(lab) for lab in cyc]
        for k, c in enumerate(ids):
            sigma[c] = ids[(k + 1) % len(ids)]
    return sigma


def check_three_term(D: DifferenceRuleSet) -> list[tuple[Part, Part, Part]]:
    """Counterexamples to the three-part lemma at the two value layouts.

    For ``x <= y <= z`` with values within one of each other and ``x z``
    forbidden, one of ``x y`` or ``y z`` must be forbidden too.  Values are
    taken at -2 and -1, which covers every layout up to translation.
    """
    alph = D.alphabet
    n = alph.size
    bad = []
    layouts = [(-1, -1, -1), (-2, -2, -1), (-2, -1, -1)]
    memo: dict = {}

    def forbidden(p: Part, q: Part) -> bool:
        if (p, q) not in memo:
            memo[(p, q)] = not satisfies_counts(Counter([p, q]), D)
        return memo[(p, q)]

    for (i, j, k), a, b, c in product(layouts, range(n), range(n), range(n)):
        x, y, z = (i, a), (j, b), (k, c)
        if not (alph.part_key(*x) <= alph.part_key(*y) <= alph.part_key(*z)):
            continue
        if forbidden(x, z) and not (forbidden(x, y) or forbidden(y, z)):
            bad.append((x, y, z))
    return bad


class LayerModel:
    """Membership of ``D`` decided one value layer at a time.

    A layer is the sorted tuple of colors of all parts with one value.
    Patterns without an offset-1 cell constrain single layers; the others
    constrain a layer (offset 0, value ``i``) together with the layer just
    below it (offset 1, value ``i - 1``).  Multiplicities beyond what any
    cross pattern can ask for are irrelevant, so layers are reduced to
    capped keys before the pairwise test.
    """

    def __init__(self, D: DifferenceRuleSet):
        self.rules = D
        self.single: list[Counter] = []
        self.cross: list[tuple[Counter, Counter]] = []
        for p in D.sorted_patterns():
            upper = Counter(c for off, c in p.cells if off == 0)
            lower = Counter(c for off, c in p.cells if off == 1)
            if lower:
                self.cross.append((upper, lower))
            else:
                self.single.append(upper)
        n = D.alphabet.size
        self.cap_upper = [max((u[c] for u, _ in self.cross), default=0) for c in range(n)]
        self.cap_lower = [max((lo[c] for _, lo in self.cross), default=0) for c in range(n)]
        self._single_by_color: dict[int, list[Counter]] = {c: [] for c in range(n)}
        for pat in self.single:
            for c in pat:
                self._single_by_color[c].append(pat)
        self._layer_cache: dict[tuple, bool] = {}
        self._pair_cache: dict[tuple, bool] = {}

    def upper_key(self, layer: tuple[int, ...]) -> tuple[int, ...]:
        cnt = Counter(layer)
        return tuple(min(cnt[c], cap) for c, cap in enumerate(self.cap_upper))

    def lower_key(self, layer: tuple[int, ...]) -> tuple[int, ...]:
        cnt = Counter(layer)
        return tuple(min(cnt[c], cap) for c, cap in enumerate(self.cap_lower))

    def layer_ok(self, layer: tuple[int, ...]) -> bool:
        hit = self._layer_cache.get(layer)
        if hit is None:
            cnt = Counter(layer)
            hit = not any(_contains(cnt, pat) for pat in self.single)
            self._layer_cache[layer] = hit
        return hit

    def extend_ok(self, cnt: Counter, color: int) -> bool:
        """Whether adding ``color`` to a valid layer ``cnt`` keeps it valid."""
        cnt[color] += 1
        try:
            return not any(_contains(cnt, pat) for pat in self._single_by_color[color])
        finally:
            cnt[color] -= 1

    def keys_compatible(self, upper: tuple[int, ...], lower: tuple[int, ...]) -> bool:
        key = (upper, lower)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = not any(
                all(upper[c] >= m for c, m in up.items()) and all(lower[c] >= m for c, m in lo.items())
                for up, lo in self.cross
            )
            self._pair_cache[key] = hit
        return hit

    def pair_ok(self, upper: tuple[int, ...], lower: tuple[int, ...]) -> bool:
        """Layer ``upper`` at value ``i`` next to layer ``lower`` at value ``i - 1``."""
        return self.keys_compatible(self.upper_key(upper), self.lower_key(lower))

    def satisfies_counts(self, counts: Counter) -> bool:
        layers: dict[int, list[int]] = {}
        for (v, c), m in counts.items():
            if m:
                layers.setdefault(v, []).extend([c] * m)
        frozen = {v: tuple(sorted(cs)) for v, cs in layers.items()}
        for v, layer in frozen.items():
            if not self.layer_ok(layer):
                return False
            below = frozen.get(v - 1)
            if below is not None and not self.pair_ok(layer, below):
                return False
        return True

    def satisfies(self, pi: ColoredPartition) -> bool:
        return self.satisfies_counts(pi.counts())


def violates_with(counts: Counter, part: Part, D: DifferenceRuleSet) -> bool:
    """Whether ``counts`` plus ``part`` contains a pattern instance that uses ``part``.

    If ``counts`` avoids ``D``, this decides whether the enlarged multiset does.
    """
    value, color = part
    counts[part] += 1
    try:
        for p in D.patterns:
            for off, c in p.cells:
                if c == color and value + off < 0 and _contains(counts, p.at(value + off)):
                    return True
        return False
    finally:
        counts[part] -= 1
        if not counts[part]:
            del counts[part]
