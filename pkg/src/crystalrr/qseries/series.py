"""Truncated q-series with integer coefficients and exponents in (1/2)Z.

Coefficients are stored densely by doubled exponent: ``c[k]`` is the
coefficient of ``q^(k/2)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Exponent = int | Fraction


def to_doubled(order: Exponent) -> int:
    d = Fraction(order) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {order} is not a multiple of 1/2")
    return int(d)


def format_exponent(k2: int) -> str:
    return str(k2 // 2) if k2 % 2 == 0 else f"{k2}/2"


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # construction

    @classmethod
    def zero(cls, order: Exponent) -> "QSeries":
        return cls((0,) * (to_doubled(order) + 1))

    @classmethod
    def one(cls, order: Exponent) -> "QSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: Exponent, order: Exponent, coeff: int = 1) -> "QSeries":
        c = [0] * (to_doubled(order) + 1)
        k = to_doubled(exponent)
        if k < len(c):
            c[k] = coeff
        return cls(tuple(c))

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "QSeries":
        """Integer-exponent coefficients ``values[n]`` of ``q^n``; order is ``len - 1``."""
        values = list(values)
        c = [0] * (2 * len(values) - 1)
        c[::2] = values
        return cls(tuple(c))

    @classmethod
    def from_doubled(cls, mapping: Mapping[int, int], order2: int) -> "QSeries":
        c = [0] * (order2 + 1)
        for k, v in mapping.items():
            if 0 <= k <= order2:
                c[k] += v
        return cls(tuple(c))

    # access

    @property
    def order2(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order(self) -> Fraction:
        return Fraction(self.order2, 2)

    def __getitem__(self, exponent: Exponent) -> int:
        k = to_doubled(exponent)
        if k < 0:
            return 0
        if k > self.order2:
            raise IndexError(f"q^{exponent} is beyond the truncation order {self.order}")
        return self.coeffs[k]

    @property
    def half_integral(self) -> bool:
        return any(self.coeffs[1::2])

    def integer_coefficients(self) -> list[int]:
        """Coefficients of ``q^0 .. q^floor(order)``; only for series without half powers."""
        if self.half_integral:
            raise ValueError("series has half-integer exponents")
        return list(self.coeffs[::2])

    def nonzero(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    # arithmetic at the common (smaller) truncation

    def _align(self, other: "QSeries") -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = min(len(self.coeffs), len(other.coeffs))
        return self.coeffs[:n], other.coeffs[:n]

    def truncate(self, order: Exponent) -> "QSeries":
        k = to_doubled(order)
        if k > self.order2:
            raise ValueError("cannot raise the truncation order")
        return QSeries(self.coeffs[: k + 1])

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b = self._align(other)
        return QSeries(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "QSeries") -> "QSeries":
        a, b = self._align(other)
        return QSeries(tuple(x - y for x, y in zip(a, b)))

    def __neg__(self) -> "QSeries":
        return QSeries(tuple(-x for x in self.coeffs))

    def __mul__(self, other: "QSeries | int") -> "QSeries":
        if isinstance(other, int):
            return QSeries(tuple(other * x for x in self.coeffs))
        a, b = self._align(other)
        n = len(a)
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return QSeries(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the constant term must be +1 or -1."""
        a = self.coeffs
        if a[0] not in (1, -1):
            raise ValueError("constant term must be a unit")
        out = [0] * len(a)
        out[0] = a[0]
        for k in range(1, len(a)):
            s = sum(a[j] * out[k - j] for j in range(1, k + 1) if a[j])
            out[k] = -s * a[0]
        return QSeries(tuple(out))

    def first_mismatch(self, other: "QSeries") -> int | None:
        """Smallest doubled exponent where the two series differ, if any."""
        a, b = self._align(other)
        for k, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return k
        return None

    # text forms

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "q"
            else:
                e = format_exponent(k)
                mono = f"q^{e}" if k % 2 == 0 else f"q^({e})"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            text = "0"
        else:
            first_sign, first = terms[0]
            text = ("-" if first_sign == "-" else "") + first
            for sign, body in terms[1:]:
                text += f" {sign} {body}"
        # first exponent not covered; integer series jump to the next integer
        nxt = self.order2 + 1 if self.half_integral or self.order2 % 2 else self.order2 + 2
        e = format_exponent(nxt)
        return f"{text} + O(q^{e if nxt % 2 == 0 else f'({e})'})"

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in enumerate(self.coeffs) if c}

    def dumps(self) -> str:
        return json.dumps({"order_times_2": self.order2, "coefficients": self.to_json()})

    @classmethod
    def from_json(cls, data: Mapping[str, int], order2: int) -> "QSeries":
        return cls.from_doubled({int(k): int(v) for k, v in data.items()}, order2)
