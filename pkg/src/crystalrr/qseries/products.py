"""Infinite products over arithmetic progressions, expanded to a given order."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .series import Exponent, QSeries, to_doubled

GEOMETRIC = "geometric"  # (1 - q^r)^-1
BINOMIAL = "binomial"  # (1 + q^r)
EULER = "euler"  # (1 - q^r)
FORMS = (GEOMETRIC, BINOMIAL, EULER)


@dataclass(frozen=True)
class Factor:
    """Product over ``r >= 1`` with ``r mod modulus`` in ``residues``, exponent ``r + offset``."""

    modulus: int
    residues: tuple[int, ...]
    form: str = GEOMETRIC
    offset: Fraction = Fraction(0)
    limit: int | None = None  # stop at r <= limit (finite products)

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown factor form {self.form!r}")
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        res = tuple(sorted({r % self.modulus for r in self.residues}))
        object.__setattr__(self, "residues", res)
        object.__setattr__(self, "offset", Fraction(self.offset))
        to_doubled(self.offset)

    def exponents2(self, order2: int) -> Iterator[int]:
        off2 = to_doubled(self.offset)
        r = 1
        while 2 * r + off2 <= order2 and (self.limit is None or r <= self.limit):
            if r % self.modulus in self.residues:
                yield 2 * r + off2
            r += 1

    def describe(self) -> str:
        if self.modulus == 1:
            cond = "r>=1"
        elif self.modulus == 2 and self.residues == (1,):
            cond = "r odd"
        elif len(self.residues) == self.modulus - 1 and 0 not in self.residues:
            cond = f"r!=0 mod {self.modulus}"
        else:
            shown = sorted(r or self.modulus for r in self.residues)
            cond = f"r={','.join(map(str, shown))} mod {self.modulus}"
        if self.limit is not None:
            cond += f", r<={self.limit}"
        e = "q^r" if self.offset == 0 else f"q^(r+{self.offset})"
        body = {GEOMETRIC: f"(1-{e})^-1", BINOMIAL: f"(1+{e})", EULER: f"(1-{e})"}[self.form]
        return f"prod_{{{cond}}} {body}"

    def to_json(self) -> dict:
        out = {"modulus": self.modulus, "residues": list(self.residues), "form": self.form}
        if self.offset:
            out["offset"] = str(self.offset)
        if self.limit is not None:
            out["limit"] = self.limit
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Factor":
        return cls(
            int(data["modulus"]),
            tuple(int(r) for r in data["residues"]),
            data.get("form", GEOMETRIC),
            Fraction(data.get("offset", 0)),
            data.get("limit"),
        )


@dataclass(frozen=True)
class ProductSide:
    factors: tuple[Factor, ...] = ()
    note: str = field(default="", compare=False)

    def describe(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f.describe() for f in self.factors)

    def to_json(self) -> list[dict]:
        return [f.to_json() for f in self.factors]

    @classmethod
    def from_json(cls, data: Sequence[dict], note: str = "") -> "ProductSide":
        return cls(tuple(Factor.from_json(d) for d in data), note)


def expand_product(ps: ProductSide, order: Exponent) -> QSeries:
    """Expand the product exactly through ``q^order``."""
    n2 = to_doubled(order)
    c = [0] * (n2 + 1)
    c[0] = 1
    for f in ps.factors:
        for e in f.exponents2(n2):
            if f.form == GEOMETRIC:
                for k in range(e, n2 + 1):
                    c[k] += c[k - e]
            elif f.form == BINOMIAL:
                for k in range(n2, e - 1, -1):
                    c[k] += c[k - e]
            else:
                for k in range(n2, e - 1, -1):
                    c[k] -= c[k - e]
    return QSeries(tuple(c))


def partitions_product() -> ProductSide:
    return ProductSide((Factor(1, (0,)),))


def residue_product(modulus: int, residues: Sequence[int], form: str = GEOMETRIC, note: str = "") -> ProductSide:
    return ProductSide((Factor(modulus, tuple(residues), form),), note)
