"""Exhaustive check of the path/plain-partition bijection up to a box budget.

For every pair (path, plain partition) with at most ``boxes`` boxes we form
the image, then check that it

* avoids every forbidden pattern,
* has the box count and weight of the pair,
* decomposes back to the same pair (so the map is injective),
* is distinct from every other image of the same box count.

Surjectivity then follows by counting: the number of images of each box
count must equal the number of members of the partition ideal with that
many boxes, which the transfer recursion counts independently.  Finally the
(weight, box) histogram of the images is compared with the weighted
character of the ideal.

The hot loop works on integer tuples rather than partition objects.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..paths import _check_ground, paths_by_degree, path_degree, plain_partitions
from ..qseries import weighted_character
from ..rules import LayerModel
from .cases import CaseError, IdentityCase, get_case


@dataclass
class AuditReport:
    case: str
    boxes: int
    pairs_by_box: list[int] = field(default_factory=list)
    ideal_by_box: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    histogram_ok: bool = False
    ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations and self.histogram_ok and self.pairs_by_box == self.ideal_by_box

    @property
    def pairs(self) -> int:
        return sum(self.pairs_by_box)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "case": self.case,
            "boxes": self.boxes,
            "verdict": "pass" if self.passed else "fail",
            "pairs": self.pairs,
            "pairs_by_box": self.pairs_by_box,
            "ideal_by_box": self.ideal_by_box,
            "histogram_ok": self.histogram_ok,
            "violations": self.violations,
            "ms": self.ms if timing else None,
        }

    def render(self, timing: bool = True) -> str:
        lines = [
            f"audit {self.case}  boxes <= {self.boxes}  verdict {'PASS' if self.passed else 'FAIL'}",
            f"  pairs checked   {self.pairs}",
            f"  pairs by box    {self.pairs_by_box}",
            f"  ideal by box    {self.ideal_by_box}",
            f"  weight histogram {'matches' if self.histogram_ok else 'differs'}",
        ]
        lines += [f"  violation: {v}" for v in self.violations[:10]]
        if len(self.violations) > 10:
            lines.append(f"  ... {len(self.violations) - 10} more")
        if timing:
            lines.append(f"  {self.ms} ms")
        return "\n".join(lines)


def _where(path_text: str, delta_text: str) -> str:
    return f"path [{path_text}] with plain partition ({delta_text})"


def _doubled_weights(case: IdentityCase) -> list[tuple[int, ...]]:
    alph = case.alphabet
    return [tuple(int(2 * x) for x in alph.weight(c).coords) for c in range(alph.size)]


def bijection_audit(case: IdentityCase | str, boxes: int, max_violations: int = 50) -> AuditReport:
    if isinstance(case, str):
        case = get_case(case)
    if not case.has_path_model:
        raise CaseError(f"case {case.name!r} has no path model (needs a crystal with E[a][a] = 0)")
    if case.rules.extras:
        raise CaseError("the bijection audit covers rule sets built from an energy matrix alone")
    t0 = time.perf_counter()
    E = case.entry.matrix
    D = case.rules
    alph = case.alphabet
    ground = _check_ground(E)
    n = alph.size
    rank = [alph.part_key(0, c)[1] for c in range(n)]
    color_of_rank = {r: c for c, r in enumerate(rank)}
    Em = [[E(a, b) for b in range(n)] for a in range(n)]
    wts = _doubled_weights(case)
    zero_w = tuple(0 for _ in wts[0])
    model = LayerModel(D)
    pair_cache: dict = {}

    def layers_ok(layers: dict[int, tuple]) -> bool:
        for v, layer in layers.items():
            below = layers.get(v - 1, ())
            key = (layer, below)
            ok = pair_cache.get(key)
            if ok is None:
                ok = model.layer_ok(layer) and (not below or model.pair_ok(layer, below))
                pair_cache[key] = ok
            if not ok:
                return False
        return True

    def wsum(colors) -> tuple:
        w = zero_w
        for c in colors:
            w = tuple(x + y for x, y in zip(w, wts[c]))
        return w

    rep = AuditReport(case.name, boxes)
    by_deg = paths_by_degree(E, boxes)
    # staircase of each path: base[r] boxes at position r (0-based)
    prepared: dict[int, list] = {}
    for d, paths in by_deg.items():
        rows = []
        for p in paths:
            colors = list(p.prefix)
            seq = colors + [ground]
            base = [0] * (len(colors) + 1)
            for r in range(len(colors) - 1, -1, -1):
                base[r] = base[r + 1] + Em[seq[r]][seq[r + 1]]
            assert path_degree(p, E) == d == sum(base[:-1])
            rows.append((str(p), tuple(colors), tuple(base[:-1]), wsum(colors)))
        prepared[d] = rows
    deltas = {k: [(str(dl), tuple(dl.column_heights())) for dl in plain_partitions(k)] for k in range(boxes + 1)}

    histogram: Counter = Counter()

    def flag(msg: str):
        if len(rep.violations) < max_violations:
            rep.violations.append(msg)

    for total in range(boxes + 1):
        seen: set = set()
        count = 0
        for d in range(total + 1):
            for ptxt, colors, base, pw in prepared[d]:
                s = len(colors)
                for dtxt, heights in deltas[total - d]:
                    count += 1
                    m = max(s, len(heights))
                    image = []
                    for r in range(m):
                        b = base[r] if r < s else 0
                        h = heights[r] if r < len(heights) else 0
                        if b + h:
                            image.append(-(b + h) * n + rank[colors[r] if r < s else ground])
                    image.sort()
                    key = tuple(image)
                    if key in seen:
                        flag(f"bijection violation: {_where(ptxt, dtxt)} repeats an earlier image")
                    seen.add(key)
                    # decode the image back to (value, color)
                    parts = [(code // n, color_of_rank[code % n]) for code in key]
                    if -sum(v for v, _ in parts) != total:
                        flag(f"box count not conserved at {_where(ptxt, dtxt)}")
                    img_colors = [c for _, c in parts]
                    iw = wsum(img_colors)
                    if iw != pw:
                        flag(f"weight not conserved at {_where(ptxt, dtxt)}")
                    layers: dict[int, list] = {}
                    for v, c in parts:
                        layers.setdefault(v, []).append(c)
                    if not layers_ok({v: tuple(sorted(cs)) for v, cs in layers.items()}):
                        flag(f"image of {_where(ptxt, dtxt)} violates the difference conditions")
                    # left inverse: canonical colors give the path, excess gives the columns
                    back_colors = list(img_colors)
                    seq = back_colors + [ground]
                    acc = 0
                    back_heights = [0] * len(back_colors)
                    for r in range(len(back_colors) - 1, -1, -1):
                        acc += Em[seq[r]][seq[r + 1]]
                        back_heights[r] = -parts[r][0] - acc
                    while back_colors and back_colors[-1] == ground:
                        back_colors.pop()
                    while back_heights and back_heights[-1] == 0:
                        back_heights.pop()
                    if tuple(back_colors) != colors or tuple(back_heights) != heights:
                        flag(f"bijection violation: {_where(ptxt, dtxt)} does not decompose back")
                    histogram[(iw, total)] += 1
        rep.pairs_by_box.append(count)

    wc = weighted_character(D, boxes)
    rep.ideal_by_box = wc.by_box()
    expected = {(tuple(int(2 * Fraction(x)) for x in w), b): c for w, b, c in wc.terms}
    rep.histogram_ok = expected == dict(histogram)
    for b, (x, y) in enumerate(zip(rep.pairs_by_box, rep.ideal_by_box)):
        if x != y:
            flag(f"count mismatch at {b} boxes: {x} pairs vs {y} partitions in the ideal")
    rep.ms = int((time.perf_counter() - t0) * 1000)
    return rep
