"""Paths with a ground-state tail and their colored-partition images.

A path is a sequence ``p(1), p(2), ...`` of colors equal to the ground
letter from some point on; we store the prefix up to the last non-ground
letter.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .crystal import EnergyMatrix
from .partitions import Alphabet, ColoredPartition, PlainPartition, Weight, oplus
from .rules import DifferenceRuleSet, satisfies


class BijectionViolation(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    alphabet: Alphabet
    prefix: tuple[int, ...] = ()

    def __post_init__(self):
        g = self.alphabet.ground
        if g is None:
            raise ValueError("paths need an alphabet with a ground letter")
        p = list(self.prefix)
        while p and p[-1] == g:
            p.pop()
        object.__setattr__(self, "prefix", tuple(p))

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Path":
        text = text.strip()
        if not text:
            return cls(alphabet, ())
        return cls(alphabet, tuple(alphabet.index(s.strip()) for s in text.split(",")))

    def __getitem__(self, j: int) -> int:
        """Color at position ``j >= 1``."""
        if j < 1:
            raise IndexError("positions start at 1")
        return self.prefix[j - 1] if j <= len(self.prefix) else self.alphabet.ground

    def __len__(self) -> int:
        return len(self.prefix)

    def __str__(self) -> str:
        return ",".join(self.alphabet.label(c) for c in self.prefix)


def _check_ground(E: EnergyMatrix) -> int:
    a = E.alphabet.ground
    if a is None:
        raise ValueError("energy matrix alphabet has no ground letter")
    if E(a, a) != 0:
        raise ValueError("E at the ground letter must be 0 for the path degree to be finite")
    return a


def path_degree(p: Path, E: EnergyMatrix) -> int:
    """Number of boxes ``sum_j j * E[p(j)][p(j+1)]`` (minus the affine degree)."""
    _check_ground(E)
    return sum(j * E(p[j], p[j + 1]) for j in range(1, len(p) + 1))


def path_weight(p: Path) -> Weight:
    total = Weight.zero(p.alphabet.weight_rank)
    for c in p.prefix:
        total = total + p.alphabet.weight(c)
    return total


def part_d(p: Path, E: EnergyMatrix) -> ColoredPartition:
    """Accumulate energies from the tail: part ``r`` gets ``sum_{t>=r} E[p(t)][p(t+1)]`` boxes."""
    _check_ground(E)
    s = len(p)
    boxes = [0] * (s + 1)
    for r in range(s, 0, -1):
        boxes[r - 1] = boxes[r] + E(p[r], p[r + 1])
    parts = Counter((-boxes[r], p.prefix[r]) for r in range(s) if boxes[r] > 0)
    return ColoredPartition.from_counts(p.alphabet, parts)


def compose(p: Path, delta: PlainPartition, E: EnergyMatrix) -> ColoredPartition:
    return oplus(part_d(p, E), delta)


def decompose(pi: ColoredPartition, E: EnergyMatrix, D: DifferenceRuleSet | None = None) -> tuple[Path, PlainPartition]:
    """Inverse of :func:`compose` on the partition ideal.

    The colors of ``pi`` in canonical order give the path; the excess of
    each part over the path's own staircase gives the column heights of the
    plain partition.
    """
    a = _check_ground(E)
    if D is not None and not satisfies(pi, D):
        raise ValueError(f"{pi} violates the difference conditions")
    listing = pi.listing()
    colors = [c for _, c in listing]
    path = Path(pi.alphabet, tuple(colors))
    base = [0] * (len(colors) + 1)
    seq = colors + [a]
    for r in range(len(colors) - 1, -1, -1):
        base[r] = base[r + 1] + E(seq[r], seq[r + 1])
    heights = [-v - base[r] for r, (v, _) in enumerate(listing)]
    while heights and heights[-1] == 0:
        heights.pop()
    if any(h < 0 for h in heights) or any(x < y for x, y in zip(heights, heights[1:])):
        raise BijectionViolation(f"bijection violation at {pi}: column heights {heights}")
    delta = PlainPartition.from_column_heights(heights)
    if compose(path, delta, E) != pi:
        raise BijectionViolation(f"bijection violation at {pi}: round trip failed")
    return path, delta


def _distance_to_ground(E: EnergyMatrix) -> list[int]:
    """Least total energy of a color chain from each letter to the ground."""
    a = E.alphabet.ground
    n = E.size
    INF = float("inf")
    dist = [INF] * n
    dist[a] = 0
    for _ in range(n):
        for x in range(n):
            for y in range(n):
                if dist[y] + E(x, y) < dist[x]:
                    dist[x] = dist[y] + E(x, y)
    return [int(d) for d in dist]


def enumerate_paths(E: EnergyMatrix, budget: int) -> Iterator[Path]:
    """All paths with ``path_degree <= budget``, each once, shortest prefixes first within a branch.

    A non-ground letter at position ``k`` costs at least ``k`` times its
    energy distance to the ground letter, which bounds the search.
    """
    a = _check_ground(E)
    alph = E.alphabet
    n = E.size
    dist = _distance_to_ground(E)
    if any(dist[c] <= 0 for c in range(n) if c != a):
        raise ValueError("some non-ground letter reaches the ground letter at zero energy")

    def grow(prefix: list[int], cost: int) -> Iterator[Path]:
        k = len(prefix)
        if k == 0 or prefix[-1] != a:
            closing = cost + (k * E(prefix[-1], a) if k else 0)
            if closing <= budget:
                yield Path(alph, tuple(prefix))
        for c in range(n):
            step = k * E(prefix[-1], c) if k else 0
            new = cost + step
            # c sits at position k+1 and must be followed by a chain back to the ground
            if c != a and new + (k + 1) * dist[c] > budget:
                continue
            if c == a and new + (k + 2) > budget:
                continue
            prefix.append(c)
            yield from grow(prefix, new)
            prefix.pop()

    yield from grow([], 0)


def brute_force_paths(E: EnergyMatrix, budget: int, max_len: int) -> list[Path]:
    """Every trimmed prefix of length <= ``max_len`` with degree <= ``budget``."""
    from itertools import product

    seen = set()
    out = []
    for L in range(max_len + 1):
        for pre in product(range(E.size), repeat=L):
            p = Path(E.alphabet, pre)
            if p.prefix in seen:
                continue
            seen.add(p.prefix)
            if path_degree(p, E) <= budget:
                out.append(p)
    return out


def plain_partitions(n: int, max_part: int | None = None) -> Iterator[PlainPartition]:
    """Plain partitions of ``n`` with rows at most ``max_part``, in reverse lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield PlainPartition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in plain_partitions(n - first, first):
            yield PlainPartition((first,) + rest.rows)


def paths_by_degree(E: EnergyMatrix, budget: int) -> dict[int, list[Path]]:
    out: dict[int, list[Path]] = {d: [] for d in range(budget + 1)}
    for p in enumerate_paths(E, budget):
        out[path_degree(p, E)].append(p)
    return out


def pairs_with_boxes(E: EnergyMatrix, budget: int) -> Iterator[tuple[Path, PlainPartition]]:
    """All ``(path, plain partition)`` pairs with total box count <= ``budget``."""
    by_deg = paths_by_degree(E, budget)
    for d in range(budget + 1):
        for p in by_deg[d]:
            for k in range(budget - d + 1):
                for delta in plain_partitions(k):
                    yield p, delta
