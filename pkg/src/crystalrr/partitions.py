"""Colored partitions over a finite color alphabet.

A part is a pair ``(value, color)`` with ``value < 0``; a partition is a
finitely supported multiset of parts.  Parts are listed in the total order
``i_b <= j_c`` iff ``i < j``, or ``i == j`` and ``b <= c`` in the alphabet
order.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    """Classical weight as coefficients on the simple roots."""

    coords: tuple[Number, ...]

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def of(cls, *coords: Number) -> "Weight":
        return cls(tuple(coords))

    @classmethod
    def simple_root(cls, i: int, rank: int) -> "Weight":
        c = [0] * rank
        c[i - 1] = 1
        return cls(tuple(c))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise ValueError(f"weight rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def height(self) -> Number:
        """Pairing with rho: the sum of the simple-root coordinates."""
        return sum(self.coords, 0)

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coords, start=1):
            if a == 0:
                continue
            coef = "" if a == 1 else "-" if a == -1 else str(a)
            terms.append(f"{coef}a{i}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class Color:
    id: int
    label: str
    weight: Weight


@dataclass(frozen=True)
class Alphabet:
    """Colors together with a total order and an optional ground letter.

    ``order`` lists color ids from the smallest to the largest.
    """

    colors: tuple[Color, ...]
    order: tuple[int, ...]
    ground: int | None = None
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)
    _by_label: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ids = [c.id for c in self.colors]
        if ids != list(range(len(ids))):
            raise ValueError("color ids must be 0..n-1 in listing order")
        if sorted(self.order) != ids:
            raise ValueError("order must be a permutation of the color ids")
        labels = [c.label for c in self.colors]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate color labels")
        ranks = {len(set(c.weight.rank for c in self.colors))}
        if ranks != {1} and self.colors:
            raise ValueError("all color weights must share one rank")
        if self.ground is not None and not self.colors[self.ground].weight.is_zero():
            raise ValueError("ground color must have zero weight")
        object.__setattr__(self, "_rank", {c: r for r, c in enumerate(self.order)})
        object.__setattr__(self, "_by_label", {c.label: c.id for c in self.colors})

    @classmethod
    def build(
        cls,
        labels: Sequence[str],
        weights: Sequence[Weight] | None = None,
        descending: Sequence[str] | None = None,
        ground: str | None = None,
        rank: int = 0,
    ) -> "Alphabet":
        """Build from labels; ``descending`` lists labels from largest to smallest."""
        if weights is None:
            weights = [Weight.zero(rank)] * len(labels)
        colors = tuple(Color(i, lab, w) for i, (lab, w) in enumerate(zip(labels, weights)))
        index = {lab: i for i, lab in enumerate(labels)}
        if descending is None:
            descending = labels
        order = tuple(index[lab] for lab in reversed(list(descending)))
        g = index[ground] if ground is not None else None
        return cls(colors, order, g)

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def size(self) -> int:
        return len(self.colors)

    @property
    def weight_rank(self) -> int:
        return self.colors[0].weight.rank if self.colors else 0

    def rank(self, color: int) -> int:
        """Position of ``color`` in the total order (0 = smallest)."""
        return self._rank[color]

    def precedes(self, a: int, b: int) -> bool:
        """``a`` strictly below ``b`` in the color order."""
        return self._rank[a] < self._rank[b]

    def index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"unknown color {label!r}") from None

    def label(self, color: int) -> str:
        return self.colors[color].label

    def weight(self, color: int) -> Weight:
        return self.colors[color].weight

    def labels(self) -> list[str]:
        return [c.label for c in self.colors]

    def with_order(self, order: Sequence[int]) -> "Alphabet":
        return Alphabet(self.colors, tuple(order), self.ground)

    def part_key(self, value: int, color: int) -> tuple[int, int]:
        return (value, self._rank[color])


Part = tuple[int, int]  # (value, color id)


@dataclass(frozen=True)
class ColoredPartition:
    """Immutable multiset of colored parts in canonical order.

    ``parts`` holds ``(value, color, multiplicity)`` triples sorted by the
    total order on parts.  Use :meth:`of` or :meth:`from_counts` to build.
    """

    alphabet: Alphabet
    parts: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def from_counts(cls, alphabet: Alphabet, counts: Mapping[Part, int]) -> "ColoredPartition":
        items = []
        for (value, color), mult in counts.items():
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            if value >= 0:
                raise ValueError(f"part value must be negative, got {value}")
            if not 0 <= color < alphabet.size:
                raise ValueError(f"color id {color} outside alphabet")
            items.append((value, color, mult))
        items.sort(key=lambda t: alphabet.part_key(t[0], t[1]))
        return cls(alphabet, tuple(items))

    @classmethod
    def of(cls, alphabet: Alphabet, parts: Iterable[Part]) -> "ColoredPartition":
        return cls.from_counts(alphabet, Counter(parts))

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "ColoredPartition":
        return cls(alphabet, ())

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "ColoredPartition":
        """Parse whitespace-separated parts such as ``(-5)_1 (-3)_8``; ``^k`` repeats."""
        parts: Counter = Counter()
        for token in text.split():
            mult = 1
            if "^" in token:
                token, m = token.rsplit("^", 1)
                mult = int(m)
            if not (token.startswith("(") and ")_" in token):
                raise ValueError(f"bad part {token!r}")
            value, label = token[1:].split(")_", 1)
            parts[(int(value), alphabet.index(label))] += mult
        return cls.from_counts(alphabet, parts)

    def counts(self) -> Counter:
        return Counter({(v, c): m for v, c, m in self.parts})

    def multiplicity(self, value: int, color: int) -> int:
        for v, c, m in self.parts:
            if v == value and c == color:
                return m
        return 0

    def listing(self) -> list[Part]:
        """Parts in canonical order, repeated according to multiplicity."""
        return [(v, c) for v, c, m in self.parts for _ in range(m)]

    def __len__(self) -> int:
        return sum(m for _, _, m in self.parts)

    def __iter__(self):
        return iter(self.listing())

    def _same(self, other: "ColoredPartition") -> None:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("partitions over different alphabets")

    def product(self, other: "ColoredPartition") -> "ColoredPartition":
        self._same(other)
        return ColoredPartition.from_counts(self.alphabet, self.counts() + other.counts())

    __mul__ = product

    def contains(self, other: "ColoredPartition") -> bool:
        self._same(other)
        mine = self.counts()
        return all(mine[p] >= m for p, m in other.counts().items())

    def box_count(self) -> int:
        return sum(-v * m for v, _, m in self.parts)

    def weight(self) -> Weight:
        total = Weight.zero(self.alphabet.weight_rank)
        for _, c, m in self.parts:
            total = total + self.alphabet.weight(c) * m
        return total

    def degree(self, spec: "Specialization") -> Fraction:
        return spec.degree(self)

    def to_json(self) -> list[dict]:
        return [
            {"value": v, "color": self.alphabet.label(c), "mult": m} for v, c, m in self.parts
        ]

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: list[dict]) -> "ColoredPartition":
        counts: Counter = Counter()
        for item in data:
            counts[(int(item["value"]), alphabet.index(str(item["color"])))] += int(item.get("mult", 1))
        return cls.from_counts(alphabet, counts)

    def __str__(self) -> str:
        if not self.parts:
            return "1"
        out = []
        for v, c, m in self.parts:
            tok = f"({v})_{self.alphabet.label(c)}"
            out.append(tok if m == 1 else f"{tok}^{m}")
        return " ".join(out)


@dataclass(frozen=True)
class PlainPartition:
    """Partition without colors, stored as nonincreasing positive row lengths."""

    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(self.rows)
        if any(r < 1 for r in rows):
            raise ValueError("rows must be positive")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError("rows must be nonincreasing")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_column_heights(cls, heights: Sequence[int]) -> "PlainPartition":
        """Inverse of :meth:`column_heights` (the conjugate partition)."""
        if any(a < b for a, b in zip(heights, heights[1:])) or any(h < 0 for h in heights):
            raise ValueError("column heights must be nonincreasing and nonnegative")
        n = heights[0] if heights else 0
        return cls(tuple(sum(1 for h in heights if h >= k) for k in range(1, n + 1)))

    def column_heights(self) -> list[int]:
        """``c[n-1]`` is the number of rows of length at least ``n``."""
        if not self.rows:
            return []
        return [sum(1 for r in self.rows if r >= n) for n in range(1, self.rows[0] + 1)]

    def size(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")"


def oplus(nu: ColoredPartition, delta: PlainPartition) -> ColoredPartition:
    """Add the rows of ``delta`` as staircase boxes on top of ``nu``.

    Row ``r`` of ``delta`` adds one box to each of the first ``r`` parts of
    ``nu`` in canonical order; positions past the end of ``nu`` are filled
    with ground-colored parts starting from zero boxes.
    """
    listing = nu.listing()
    heights = delta.column_heights()
    n = max(len(listing), len(heights))
    if n > len(listing) and nu.alphabet.ground is None:
        raise ValueError("alphabet has no ground color to extend the partition")
    ground = nu.alphabet.ground
    out: Counter = Counter()
    for pos in range(n):
        value, color = listing[pos] if pos < len(listing) else (0, ground)
        value -= heights[pos] if pos < len(heights) else 0
        if value < 0:
            out[(value, color)] += 1
    return ColoredPartition.from_counts(nu.alphabet, out)


def oplus_staircase(nu: ColoredPartition, delta: PlainPartition) -> ColoredPartition:
    """Box-by-box version of :func:`oplus`; kept as an independent check."""
    rows = [[v, c] for v, c in nu.listing()]
    for r in delta.rows:
        while len(rows) < r:
            rows.append([0, nu.alphabet.ground])
        for k in range(r):
            rows[k][0] -= 1
    return ColoredPartition.of(nu.alphabet, [(v, c) for v, c in rows if v < 0])


@dataclass(frozen=True)
class Specialization:
    """Degree map ``|(-j)_b| = m*j - shift(b)`` on parts.

    Shifts may be half-integers; :meth:`doubled` returns twice the degree
    as an ``int`` so series can carry half-integer exponents exactly.
    """

    alphabet: Alphabet
    m: int
    shifts: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        shifts = tuple(Fraction(s) for s in self.shifts)
        if len(shifts) != self.alphabet.size:
            raise ValueError("one shift per color required")
        if any((2 * s).denominator != 1 for s in shifts):
            raise ValueError("shifts must be integers or half-integers")
        if self.m <= 0:
            raise ValueError("m must be positive")
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "_d2", tuple(int(2 * s) for s in shifts))

    @classmethod
    def from_labels(cls, alphabet: Alphabet, m: int, shifts: Mapping[str, Number], name: str = ""):
        return cls(alphabet, m, tuple(Fraction(shifts[lab]) for lab in alphabet.labels()), name)

    @classmethod
    def principal(cls, alphabet: Alphabet, m: int | None = None) -> "Specialization":
        """Shift each color by the height of its weight; ``m`` defaults to rank + 1."""
        if m is None:
            m = alphabet.weight_rank + 1
        shifts = tuple(Fraction(alphabet.weight(c).height()) for c in range(alphabet.size))
        return cls(alphabet, m, shifts, "principal")

    @classmethod
    def box_count(cls, alphabet: Alphabet) -> "Specialization":
        return cls(alphabet, 1, (Fraction(0),) * alphabet.size, "boxes")

    @property
    def half_integral(self) -> bool:
        return any(d % 2 for d in self._d2)

    def doubled(self, value: int, color: int) -> int:
        return -2 * self.m * value - self._d2[color]

    def part_degree(self, value: int, color: int) -> Fraction:
        return Fraction(self.doubled(value, color), 2)

    def degree(self, pi: ColoredPartition) -> Fraction:
        return Fraction(sum(self.doubled(v, c) * k for v, c, k in pi.parts), 2)

    def min_doubled(self) -> int:
        """Smallest doubled degree of any part (attained at value -1)."""
        return min(self.doubled(-1, c) for c in range(self.alphabet.size))

    def describe(self) -> str:
        out = []
        for c in range(self.alphabet.size):
            s = self.shifts[c]
            if s == 0:
                rhs = f"{self.m}i"
            else:
                rhs = f"{self.m}i{'-' if s > 0 else '+'}{abs(s)}"
            out.append(f"(-i)_{self.alphabet.label(c)} -> {rhs}")
        return ", ".join(out)
