"""Finite crystal graphs, their weights, and energy matrices.

The energy matrix of a crystal ``B`` is read off an energy function ``H`` on
``B (x) B``: ``E[a][b] = H(b (x) a)``.  ``H`` is constant along classical
arrows and moves by one along 0-arrows, up or down depending on which tensor
factor the 0-operator acts on.  Both the tensor-product orientation and the
sign of that step are conventions; :data:`DEFAULT_CONVENTION` is the unique
choice that reproduces the tabulated A2 matrix (see :func:`calibrate`).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .partitions import Alphabet, Color, Weight


class CrystalError(ValueError):
    pass


Arrow = tuple[int, int, int]  # (source, label, target)


@dataclass(frozen=True)
class CrystalGraph:
    """Colored graph with arrows labeled ``0..rank``; label 0 is the affine arrow."""

    alphabet: Alphabet
    arrows: frozenset[Arrow]
    rank: int
    _f: dict = field(init=False, repr=False, compare=False, hash=False)
    _e: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        f: dict = {}
        e: dict = {}
        n = self.alphabet.size
        for s, i, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise CrystalError(f"arrow {(s, i, t)} leaves the alphabet")
            if not 0 <= i <= self.rank:
                raise CrystalError(f"arrow label {i} outside 0..{self.rank}")
            if (s, i) in f:
                raise CrystalError(f"two outgoing {i}-arrows at {self.alphabet.label(s)}")
            if (t, i) in e:
                raise CrystalError(f"two incoming {i}-arrows at {self.alphabet.label(t)}")
            f[(s, i)] = t
            e[(t, i)] = s
        object.__setattr__(self, "_f", f)
        object.__setattr__(self, "_e", e)
        for v in range(n):
            for i in range(self.rank + 1):
                self._string(v, i, self._f)

    @classmethod
    def build(
        cls,
        labels: Sequence[str],
        arrows: Iterable[tuple[str, int, str]],
        rank: int,
        ground: str | None = None,
        descending: Sequence[str] | None = None,
        theta: Weight | None = None,
    ) -> "CrystalGraph":
        """Build from labeled arrows, deriving weights from the ground letter."""
        bare = Alphabet.build(labels, descending=descending, rank=rank)
        idx = {lab: i for i, lab in enumerate(labels)}
        arr = frozenset((idx[s], i, idx[t]) for s, i, t in arrows)
        g = cls(bare, arr, rank)
        if ground is None:
            return g
        weights = solve_weights(g, theta, ground=idx[ground])
        alph = Alphabet(
            tuple(Color(c.id, c.label, weights[c.id]) for c in bare.colors),
            bare.order,
            idx[ground],
        )
        return cls(alph, arr, rank)

    @classmethod
    def from_json(cls, data: dict) -> "CrystalGraph":
        labels = [str(c) for c in data["colors"]]
        arrows = [(str(s), int(i), str(t)) for s, i, t in data["arrows"]]
        rank = int(data.get("rank", max((i for _, i, _ in arrows), default=0)))
        theta = Weight(tuple(data["theta"])) if "theta" in data else None
        return cls.build(
            labels, arrows, rank, ground=data.get("ground"), descending=data.get("order"), theta=theta
        )

    @classmethod
    def load(cls, path: str | Path) -> "CrystalGraph":
        return cls.from_json(json.loads(Path(path).read_text()))

    def with_alphabet(self, alphabet: Alphabet) -> "CrystalGraph":
        return CrystalGraph(alphabet, self.arrows, self.rank)

    def f(self, v: int, i: int) -> int | None:
        return self._f.get((v, i))

    def e(self, v: int, i: int) -> int | None:
        return self._e.get((v, i))

    def _string(self, v: int, i: int, step: dict) -> int:
        n, seen = 0, {v}
        while (v, i) in step:
            v = step[(v, i)]
            if v in seen:
                raise CrystalError(f"{i}-arrows form a cycle")
            seen.add(v)
            n += 1
        return n

    def epsilon(self, v: int, i: int) -> int:
        return self._string(v, i, self._e)

    def phi(self, v: int, i: int) -> int:
        return self._string(v, i, self._f)

    def epsilon_phi(self, v: int, i: int) -> tuple[int, int]:
        return self.epsilon(v, i), self.phi(v, i)

    def is_connected(self) -> bool:
        n = self.alphabet.size
        if n == 0:
            return True
        adj: dict[int, set] = {v: set() for v in range(n)}
        for s, _, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen, todo = {0}, [0]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == n


def solve_weights(g: CrystalGraph, theta: Weight | None = None, ground: int | None = None) -> list[Weight]:
    """Propagate weights from the ground letter.

    An ``i``-arrow (``i != 0``) subtracts the simple root ``alpha_i``; a
    0-arrow adds ``theta`` (default: the sum of all simple roots).
    """
    rank = g.rank
    if theta is None:
        theta = Weight((1,) * rank)
    if ground is None:
        ground = g.alphabet.ground
    if ground is None:
        raise CrystalError("no ground color designated")
    step = {0: theta}
    for i in range(1, rank + 1):
        step[i] = -Weight.simple_root(i, rank)
    adj: dict[int, list] = {v: [] for v in range(g.alphabet.size)}
    for s, i, t in g.arrows:
        adj[s].append((t, step[i]))
        adj[t].append((s, -step[i]))
    wt: dict[int, Weight] = {ground: Weight.zero(rank)}
    todo = deque([ground])
    while todo:
        v = todo.popleft()
        for w, d in adj[v]:
            cand = wt[v] + d
            if w not in wt:
                wt[w] = cand
                todo.append(w)
            elif wt[w] != cand:
                raise CrystalError("not a weight-consistent crystal")
    if len(wt) != g.alphabet.size:
        raise CrystalError("crystal graph is not connected")
    return [wt[v] for v in range(g.alphabet.size)]


@dataclass(frozen=True)
class Convention:
    """``left_first``: f_i acts on the left factor when phi(left) > eps(right).

    ``zero_step``: change of H along a 0-arrow whose operator acts on the
    left factor (the right factor gets the opposite sign).
    """

    left_first: bool = True
    zero_step: int = -1


@dataclass(frozen=True)
class TensorSquare:
    """The crystal ``B (x) B`` on pairs ``(left, right)``.

    ``arrows`` holds ``((l, r), i, (l2, r2), acted_left)``.
    """

    base: CrystalGraph
    arrows: tuple[tuple[tuple[int, int], int, tuple[int, int], bool], ...]

    @property
    def vertices(self) -> list[tuple[int, int]]:
        n = self.base.alphabet.size
        return [(a, b) for a in range(n) for b in range(n)]

    def components(self) -> list[set]:
        adj: dict = {v: [] for v in self.vertices}
        for s, _, t, _ in self.arrows:
            adj[s].append(t)
            adj[t].append(s)
        seen: set = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp, todo = {v}, [v]
            while todo:
                for w in adj[todo.pop()]:
                    if w not in comp:
                        comp.add(w)
                        todo.append(w)
            seen |= comp
            comps.append(comp)
        return comps


def tensor_square(g: CrystalGraph, convention: Convention = None) -> TensorSquare:
    conv = convention or DEFAULT_CONVENTION
    n = g.alphabet.size
    eps = {(v, i): g.epsilon(v, i) for v in range(n) for i in range(g.rank + 1)}
    phi = {(v, i): g.phi(v, i) for v in range(n) for i in range(g.rank + 1)}
    arrows = []
    for left, right in product(range(n), repeat=2):
        for i in range(g.rank + 1):
            if conv.left_first:
                on_left = phi[(left, i)] > eps[(right, i)]
            else:
                # mirror image: the same rule applied to the swapped pair
                on_left = not phi[(right, i)] > eps[(left, i)]
            if on_left:
                t = g.f(left, i)
                if t is not None:
                    arrows.append(((left, right), i, (t, right), True))
            else:
                t = g.f(right, i)
                if t is not None:
                    arrows.append(((left, right), i, (left, t), False))
    return TensorSquare(g, tuple(arrows))


@dataclass(frozen=True)
class EnergyMatrix:
    alphabet: Alphabet
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = self.alphabet.size
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"energy matrix must be {n}x{n}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rows: Sequence[Sequence[int]]) -> "EnergyMatrix":
        return cls(alphabet, tuple(tuple(r) for r in rows))

    def __call__(self, a: int, b: int) -> int:
        return self.entries[a][b]

    def by_label(self, a: str, b: str) -> int:
        return self.entries[self.alphabet.index(a)][self.alphabet.index(b)]

    @property
    def size(self) -> int:
        return self.alphabet.size

    def in_range(self) -> bool:
        return all(x in (0, 1, 2) for row in self.entries for x in row)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def with_alphabet(self, alphabet: Alphabet) -> "EnergyMatrix":
        return EnergyMatrix(alphabet, self.entries)

    def format(self) -> str:
        labels = self.alphabet.labels()
        w = max(len(s) for s in labels)
        head = " " * (w + 1) + " ".join(s.rjust(w) for s in labels)
        lines = [head]
        for lab, row in zip(labels, self.entries):
            lines.append(lab.rjust(w) + " " + " ".join(str(x).rjust(w) for x in row))
        return "\n".join(lines)


def solve_energy_function(g: CrystalGraph, convention: Convention = None) -> dict[tuple[int, int], int]:
    """Energy values on ``B (x) B``, each component shifted to minimum 0."""
    conv = convention or DEFAULT_CONVENTION
    sq = tensor_square(g, conv)
    adj: dict = {v: [] for v in sq.vertices}
    for s, i, t, on_left in sq.arrows:
        d = 0 if i != 0 else (conv.zero_step if on_left else -conv.zero_step)
        adj[s].append((t, d))
        adj[t].append((s, -d))
    H: dict = {}
    for comp in sq.components():
        root = min(comp)
        vals = {root: 0}
        todo = [root]
        while todo:
            v = todo.pop()
            for w, d in adj[v]:
                if w not in vals:
                    vals[w] = vals[v] + d
                    todo.append(w)
                elif vals[w] != vals[v] + d:
                    raise CrystalError("no energy function")
        low = min(vals.values())
        H.update({v: h - low for v, h in vals.items()})
    return H


def solve_energy(g: CrystalGraph, convention: Convention = None) -> EnergyMatrix:
    """Energy matrix ``E[a][b] = H(b (x) a)`` with entries in {0, 1, 2}."""
    H = solve_energy_function(g, convention)
    n = g.alphabet.size
    for (left, right), h in sorted(H.items()):
        if h not in (0, 1, 2):
            lab = g.alphabet.label
            raise CrystalError(f"energy {h} outside {{0,1,2}} at {lab(left)} (x) {lab(right)}")
    rows = [[H[(b, a)] for b in range(n)] for a in range(n)]
    return EnergyMatrix.from_rows(g.alphabet, rows)


def calibrate(g: CrystalGraph, target: EnergyMatrix) -> list[Convention]:
    """All conventions under which ``solve_energy(g)`` equals ``target``."""
    hits = []
    for left_first, step in product((True, False), (1, -1)):
        conv = Convention(left_first, step)
        try:
            E = solve_energy(g, conv)
        except CrystalError:
            continue
        if E.entries == target.entries:
            hits.append(conv)
    return hits


def order_from_energy(E: EnergyMatrix, prefer: Sequence[int] | None = None) -> tuple[int, ...]:
    """A total order (smallest first) with ``E[a][b] == 0`` implying ``a <= b``.

    Topological sort of the zero pattern; ties go to the earliest color in
    ``prefer`` (default: listing order).
    """
    n = E.size
    rank = {c: k for k, c in enumerate(prefer if prefer is not None else range(n))}
    below = {b: {a for a in range(n) if a != b and E(a, b) == 0} for b in range(n)}
    order: list[int] = []
    placed: set = set()
    while len(order) < n:
        ready = [b for b in range(n) if b not in placed and below[b] <= placed]
        if not ready:
            raise CrystalError("zero entries of E admit no compatible total order")
        c = min(ready, key=rank.__getitem__)
        order.append(c)
        placed.add(c)
    return tuple(order)


DEFAULT_CONVENTION = Convention(left_first=True, zero_step=-1)


# --- catalog ---------------------------------------------------------------

A2_LABELS = [str(k) for k in range(1, 10)]
A2_ARROWS = [
    ("1", 1, "2"), ("2", 2, "5"), ("1", 2, "3"), ("5", 2, "8"), ("3", 1, "6"),
    ("6", 1, "7"), ("8", 1, "9"), ("7", 2, "9"),
    ("9", 0, "4"), ("4", 0, "1"), ("8", 0, "3"), ("7", 0, "2"),
]
A2_TABLE = (
    (2, 2, 2, 1, 2, 2, 2, 2, 2),
    (1, 2, 1, 1, 2, 1, 2, 2, 2),
    (1, 1, 2, 1, 1, 2, 2, 2, 2),
    (1, 1, 1, 0, 1, 1, 1, 1, 1),
    (0, 0, 1, 1, 0, 1, 1, 2, 2),
    (0, 1, 0, 1, 1, 0, 2, 1, 2),
    (0, 1, 0, 1, 1, 0, 2, 1, 2),
    (0, 0, 1, 1, 0, 1, 1, 2, 2),
    (0, 0, 0, 1, 0, 0, 1, 1, 2),
)

A3_LABELS = ["14", "24", "34", "44", "13", "23", "33", "43", "12", "22", "32", "42", "11", "21", "31", "41"]
A3_ARROWS = [
    ("14", 1, "24"), ("24", 2, "34"), ("34", 3, "44"),
    ("14", 3, "13"), ("24", 3, "23"), ("44", 3, "43"),
    ("13", 1, "23"), ("23", 2, "33"),
    ("13", 2, "12"), ("33", 2, "32"), ("43", 2, "42"),
    ("12", 1, "22"), ("32", 3, "42"),
    ("22", 1, "21"), ("32", 1, "31"), ("42", 1, "41"),
    ("21", 2, "31"), ("31", 3, "41"),
    ("41", 0, "11"), ("11", 0, "14"), ("21", 0, "24"), ("31", 0, "34"),
    ("42", 0, "12"), ("43", 0, "13"),
]

A1_FOUR_ARROWS = [("1", 1, "3"), ("3", 1, "4"), ("4", 0, "2"), ("2", 0, "1")]
A1_FOUR_TABLE = ((2, 1, 2, 2), (1, 0, 1, 1), (0, 1, 0, 2), (0, 1, 0, 2))

# "almost perfect" chains: 1 -> 2 -> 3 under f1, reversed by f0
A1_THREE_ARROWS = [("1", 1, "2"), ("2", 1, "3"), ("3", 0, "2"), ("2", 0, "1")]
A1_THREE_TABLE = ((2, 2, 2), (1, 1, 2), (0, 1, 2))

GAMMA_PRIME_LABELS = ["1", "2", "3", "5", "6", "7", "8", "9"]
GAMMA_PRIME_TABLE = (
    (2, 2, 2, 2, 2, 2, 2, 2),
    (1, 2, 1, 2, 1, 2, 2, 2),
    (1, 1, 2, 1, 2, 2, 2, 2),
    (0, 1, 1, 1, 1, 1, 2, 2),
    (1, 1, 1, 1, 1, 2, 1, 2),
    (0, 1, 0, 1, 1, 2, 1, 2),
    (0, 0, 1, 1, 1, 1, 2, 2),
    (0, 0, 0, 0, 1, 1, 1, 2),
)

HALF_INT_WEIGHTS = [Weight.of(Fraction(1, 2)), Weight.of(Fraction(-1, 2))]


@dataclass(frozen=True)
class CatalogEntry:
    """A crystal (when the source gives one) and the energy matrix to use.

    ``derived`` is true when the matrix was computed from the graph rather
    than copied from a given table.
    """

    name: str
    matrix: EnergyMatrix
    graph: CrystalGraph | None = None
    derived: bool = False

    @property
    def alphabet(self) -> Alphabet:
        return self.matrix.alphabet


def a2_graph() -> CrystalGraph:
    return CrystalGraph.build(A2_LABELS, A2_ARROWS, rank=2, ground="4")


def a3_graph() -> CrystalGraph:
    return CrystalGraph.build(A3_LABELS, A3_ARROWS, rank=3, ground="11")


def a1_four_graph() -> CrystalGraph:
    return CrystalGraph.build(["1", "2", "3", "4"], A1_FOUR_ARROWS, rank=1, ground="2")


def a1_three_graph() -> CrystalGraph:
    return CrystalGraph.build(["1", "2", "3"], A1_THREE_ARROWS, rank=1, ground="2")


def _tabulated(labels, rows, weights=None, rank=0, ground=None) -> EnergyMatrix:
    alph = Alphabet.build(labels, weights, ground=ground, rank=rank)
    E = EnergyMatrix.from_rows(alph, rows)
    return E.with_alphabet(alph.with_order(order_from_energy(E)))


def _a2() -> CatalogEntry:
    g = a2_graph()
    return CatalogEntry("a2-basic", solve_energy(g), g, derived=True)


def _a3() -> CatalogEntry:
    g = a3_graph()
    E = solve_energy(g)
    alph = g.alphabet.with_order(order_from_energy(E))
    g = g.with_alphabet(alph)
    return CatalogEntry("a3-basic", E.with_alphabet(alph), g, derived=True)


def _a1_four() -> CatalogEntry:
    g = a1_four_graph()
    E = EnergyMatrix.from_rows(g.alphabet, A1_FOUR_TABLE)
    alph = g.alphabet.with_order(order_from_energy(E))
    return CatalogEntry("a1-four-color", E.with_alphabet(alph), g.with_alphabet(alph))


def _a1_three(name: str) -> CatalogEntry:
    g = a1_three_graph()
    E = EnergyMatrix.from_rows(g.alphabet, A1_THREE_TABLE)
    alph = g.alphabet.with_order(order_from_energy(E))
    return CatalogEntry(name, E.with_alphabet(alph), g.with_alphabet(alph))


def _gamma_prime() -> CatalogEntry:
    a2 = a2_graph().alphabet
    weights = [a2.weight(a2.index(lab)) for lab in GAMMA_PRIME_LABELS]
    alph = Alphabet.build(GAMMA_PRIME_LABELS, weights, rank=2)
    return CatalogEntry("mp3-gamma-prime", EnergyMatrix.from_rows(alph, GAMMA_PRIME_TABLE))


_BUILDERS = {
    "a2-basic": _a2,
    "a3-basic": _a3,
    "a1-four-color": _a1_four,
    "a1-three-color": lambda: _a1_three("a1-three-color"),
    "capparelli": lambda: _a1_three("capparelli"),
    "rr-single": lambda: CatalogEntry("rr-single", _tabulated(["1"], [[2]])),
    "distinct-single": lambda: CatalogEntry("distinct-single", _tabulated(["1"], [[1]])),
    "half-int-distinct": lambda: CatalogEntry(
        "half-int-distinct", _tabulated(["1", "2"], [[1, 1], [0, 1]], HALF_INT_WEIGHTS, rank=1)
    ),
    "half-int-diff3": lambda: CatalogEntry(
        "half-int-diff3", _tabulated(["1", "2"], [[2, 2], [1, 2]], HALF_INT_WEIGHTS, rank=1)
    ),
    "mp3-gamma-prime": _gamma_prime,
}

CATALOG_NAMES = tuple(_BUILDERS)
_cache: dict[str, CatalogEntry] = {}


def catalog(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if name not in _cache:
        _cache[name] = _BUILDERS[name]()
    return _cache[name]
