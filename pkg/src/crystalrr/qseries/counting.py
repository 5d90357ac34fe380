"""Counting partitions in a partition ideal by degree.

:func:`gen_function` runs a transfer recursion over value layers
``-1, -2, -3, ...``: the state is the (capped) layer just above, and each
step chooses the multiset of colors at the next value.  :func:`brute_force_gen_function`
is an independent oracle that lists every colored partition up to the
requested degree and tests the forbidden patterns directly.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ..partitions import Alphabet, ColoredPartition, Specialization, Weight
from ..rules import DifferenceRuleSet, LayerModel, violates_with
from .series import Exponent, QSeries, to_doubled


class DivergentSpecialization(ValueError):
    pass


def _check_spec(D: DifferenceRuleSet, spec: Specialization) -> None:
    if spec.alphabet.colors != D.alphabet.colors:
        raise ValueError("specialization and rule set use different alphabets")
    for c in range(spec.alphabet.size):
        if spec.doubled(-1, c) <= 0:
            raise DivergentSpecialization(
                f"divergent specialization: color {spec.alphabet.label(c)} has degree "
                f"{spec.part_degree(-1, c)} at value -1"
            )


def _layers(model: LayerModel, spec: Specialization, value: int, budget2: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Valid layers at ``value`` with doubled degree at most ``budget2``."""
    n = spec.alphabet.size
    degs = [spec.doubled(value, c) for c in range(n)]
    cnt: Counter = Counter()
    layer: list[int] = []

    def grow(start: int, used: int):
        yield tuple(layer), used
        for c in range(start, n):
            d = degs[c]
            if used + d > budget2 or not model.extend_ok(cnt, c):
                continue
            cnt[c] += 1
            layer.append(c)
            yield from grow(c, used + d)
            layer.pop()
            cnt[c] -= 1

    yield from grow(0, 0)


def _weight_of(alphabet: Alphabet, layer: tuple[int, ...]) -> tuple:
    total = Weight.zero(alphabet.weight_rank)
    for c in layer:
        total = total + alphabet.weight(c)
    return total.coords


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _transfer(D: DifferenceRuleSet, spec: Specialization, order2: int, track_weight: bool) -> dict:
    """Map ``(doubled degree, weight or None) -> count`` over the ideal, degree <= order2."""
    _check_spec(D, spec)
    model = LayerModel(D)
    alph = D.alphabet
    n = alph.size
    zero = Weight.zero(alph.weight_rank).coords if track_weight else None

    # tables[j]: (lower key, upper key) -> {(deg2, wt): count} for layers at value -j
    tables: list[dict] = [{}]
    j = 1
    while min(spec.doubled(-j, c) for c in range(n)) <= order2:
        groups: dict = defaultdict(Counter)
        for layer, d2 in _layers(model, spec, -j, order2):
            if not layer:
                continue
            wt = _weight_of(alph, layer) if track_weight else None
            groups[(model.lower_key(layer), model.upper_key(layer))][(d2, wt)] += 1
        tables.append(dict(groups))
        j += 1
    depth = j  # layers at value <= -depth are necessarily empty
    empty_upper = model.upper_key(())

    cache: dict = {}

    def tail(j: int, above: tuple) -> dict:
        """Completions using values -j, -j-1, ... given the capped layer at -(j-1)."""
        if j >= depth:
            return {(0, zero): 1}
        key = (j, above)
        if key in cache:
            return cache[key]
        out: Counter = Counter(tail(j + 1, empty_upper))  # layer -j left empty
        for (lower, upper), poly in tables[j].items():
            if not model.keys_compatible(above, lower):
                continue
            rest = tail(j + 1, upper)
            for (d1, w1), c1 in poly.items():
                room = order2 - d1
                for (d2, w2), c2 in rest.items():
                    if d2 <= room:
                        out[(d1 + d2, _add(w1, w2) if track_weight else None)] += c1 * c2
        cache[key] = dict(out)
        return cache[key]

    return tail(1, empty_upper)


def gen_function(D: DifferenceRuleSet, spec: Specialization, order: Exponent) -> QSeries:
    """Number of partitions in the ideal of each specialized degree, through ``q^order``."""
    order2 = to_doubled(order)
    counts = _transfer(D, spec, order2, track_weight=False)
    return QSeries.from_doubled({d2: c for (d2, _), c in counts.items()}, order2)


def _parts_up_to(spec: Specialization, order2: int) -> list[tuple[int, int]]:
    parts = []
    j = 1
    while True:
        row = [(-j, c) for c in range(spec.alphabet.size) if spec.doubled(-j, c) <= order2]
        if not row:
            break
        parts.extend(row)
        j += 1
    parts.sort(key=lambda p: (spec.doubled(*p), p[1]))
    return parts


def iter_ideal(D: DifferenceRuleSet, spec: Specialization, order: Exponent) -> Iterator[tuple[Counter, int]]:
    """Every partition in the ideal with degree <= order, as (part counts, doubled degree).

    Parts are added in a fixed order (repeats allowed); a branch is cut as
    soon as the newest part completes a forbidden pattern, which is safe
    because the ideal is closed under removing parts.
    """
    _check_spec(D, spec)
    order2 = to_doubled(order)
    parts = _parts_up_to(spec, order2)
    degs = [spec.doubled(*p) for p in parts]
    counts: Counter = Counter()

    def grow(start: int, used: int):
        yield counts, used
        for k in range(start, len(parts)):
            d = degs[k]
            if used + d > order2:
                break
            p = parts[k]
            if violates_with(counts, p, D):
                continue
            counts[p] += 1
            yield from grow(k, used + d)
            counts[p] -= 1
            if not counts[p]:
                del counts[p]

    yield from grow(0, 0)


def brute_force_gen_function(D: DifferenceRuleSet, spec: Specialization, order: Exponent) -> QSeries:
    order2 = to_doubled(order)
    tally: Counter = Counter()
    for _, d2 in iter_ideal(D, spec, order):
        tally[d2] += 1
    return QSeries.from_doubled(tally, order2)


def ideal_members(D: DifferenceRuleSet, spec: Specialization, order: Exponent) -> list[ColoredPartition]:
    return [ColoredPartition.from_counts(D.alphabet, c) for c, _ in iter_ideal(D, spec, order)]


@dataclass(frozen=True)
class WeightedSeries:
    """Counts of partitions by (weight, box count), box count <= ``boxes``."""

    alphabet: Alphabet
    boxes: int
    terms: tuple[tuple[tuple, int, int], ...]  # (weight coords, box count, count), sorted

    def as_dict(self) -> dict[tuple[tuple, int], int]:
        return {(w, b): c for w, b, c in self.terms}

    def count(self, weight: Weight | tuple, box: int) -> int:
        w = weight.coords if isinstance(weight, Weight) else tuple(weight)
        return self.as_dict().get((w, box), 0)

    def by_box(self) -> list[int]:
        out = [0] * (self.boxes + 1)
        for _, b, c in self.terms:
            out[b] += c
        return out

    def specialize(self, m: int) -> QSeries:
        """Principal specialization: degree ``m * boxes - height(weight)``.

        Only degrees up to ``boxes`` are complete when every part has degree
        at least its box count, which holds for the principal degree maps in
        the catalog.
        """
        tally: Counter = Counter()
        for w, b, c in self.terms:
            d = m * b - sum(w, Fraction(0))
            tally[to_doubled(d)] += c
        return QSeries.from_doubled(tally, 2 * self.boxes)


def weighted_character(D: DifferenceRuleSet, boxes: int) -> WeightedSeries:
    spec = Specialization.box_count(D.alphabet)
    counts = _transfer(D, spec, 2 * boxes, track_weight=True)
    terms = sorted((w, d2 // 2, c) for (d2, w), c in counts.items())
    return WeightedSeries(D.alphabet, boxes, tuple(terms))


def brute_force_weighted_character(D: DifferenceRuleSet, boxes: int) -> WeightedSeries:
    spec = Specialization.box_count(D.alphabet)
    tally: Counter = Counter()
    alph = D.alphabet
    for counts, d2 in iter_ideal(D, spec, boxes):
        w = Weight.zero(alph.weight_rank)
        for (_, c), m in counts.items():
            w = w + alph.weight(c) * m
        tally[(w.coords, d2 // 2)] += 1
    terms = sorted((w, b, c) for (w, b), c in tally.items())
    return WeightedSeries(alph, boxes, tuple(terms))
