from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crystalrr.partitions import (
    Alphabet,
    AlphabetMismatch,
    ColoredPartition,
    PlainPartition,
    Specialization,
    Weight,
    oplus,
    oplus_staircase,
)


def P(alph, text):
    return ColoredPartition.parse(alph, text)


# --- strategies -------------------------------------------------------------

def colored(alph, max_value=6, max_parts=6):
    part = st.tuples(st.integers(-max_value, -1), st.integers(0, alph.size - 1))
    return st.lists(part, max_size=max_parts).map(lambda ps: ColoredPartition.of(alph, ps))


plain = st.lists(st.integers(1, 6), max_size=6).map(lambda xs: PlainPartition(tuple(sorted(xs, reverse=True))))


# --- weights and alphabets ----------------------------------------------------

def test_weight_arithmetic():
    a, b = Weight.of(1, 0), Weight.of(0, 1)
    assert a + b == Weight.of(1, 1)
    assert (a - b) + b == a
    assert -(a * 3) == Weight.of(-3, 0)
    assert Weight.zero(2).is_zero()
    assert (a + b).height() == 2
    assert str(a - b) == "a1 - a2"
    with pytest.raises(ValueError):
        a + Weight.of(1)


def test_alphabet_order_and_ground(A2):
    # 1 is the largest color, 9 the smallest
    assert A2.precedes(A2.index("9"), A2.index("1"))
    assert not A2.precedes(A2.index("1"), A2.index("9"))
    assert A2.label(A2.ground) == "4"
    with pytest.raises(KeyError):
        A2.index("10")


def test_ground_must_have_zero_weight():
    with pytest.raises(ValueError):
        Alphabet.build(["x", "y"], [Weight.of(1), Weight.of(0)], ground="x")


# --- colored partitions -------------------------------------------------------

def test_canonical_listing(A2):
    pi = P(A2, "(-1)_4 (-2)_5")
    assert [(v, A2.label(c)) for v, c in pi.listing()] == [(-2, "5"), (-1, "4")]
    same_value = P(A2, "(-1)_1 (-1)_9")
    assert [A2.label(c) for _, c in same_value.listing()] == ["9", "1"]


def test_product(A2):
    one = P(A2, "(-1)_1")
    assert one * ColoredPartition.empty(A2) == one
    assert (one * one).multiplicity(-1, A2.index("1")) == 2
    assert P(A2, "(-2)_5") * P(A2, "(-1)_4") == P(A2, "(-2)_5 (-1)_4")


def test_contains(A2):
    big = P(A2, "(-5)_1 (-3)_8 (-2)_9")
    assert big.contains(P(A2, "(-3)_8 (-2)_9"))
    assert big.contains(ColoredPartition.empty(A2))
    assert not P(A2, "(-1)_1").contains(P(A2, "(-1)_1^2"))


def test_box_count(A2):
    assert ColoredPartition.empty(A2).box_count() == 0
    assert P(A2, "(-5)_1 (-3)_8 (-2)_9").box_count() == 10
    assert P(A2, "(-1)_4^3").box_count() == 3


def test_weight(A2):
    assert ColoredPartition.empty(A2).weight().is_zero()
    assert P(A2, "(-1)_1 (-1)_9").weight().is_zero()
    assert P(A2, "(-2)_2").weight() == Weight.of(0, 1)


def test_degree_principal(A2):
    s = Specialization.principal(A2)
    assert s.m == 3
    assert P(A2, "(-5)_1").degree(s) == 13
    assert P(A2, "(-2)_9").degree(s) == 8
    assert ColoredPartition.empty(A2).degree(s) == 0
    for i in range(1, 6):
        assert s.part_degree(-i, A2.index("4")) == 3 * i
        assert s.part_degree(-i, A2.index("7")) == 3 * i + 1


def test_rejects_bad_parts(A2):
    with pytest.raises(ValueError):
        ColoredPartition.of(A2, [(0, 1)])
    with pytest.raises(ValueError):
        ColoredPartition.of(A2, [(-1, 99)])
    with pytest.raises(ValueError):
        PlainPartition((1, 2))


def test_alphabet_mismatch(A2):
    other = Alphabet.build(["1"])
    with pytest.raises(AlphabetMismatch):
        P(A2, "(-1)_1") * ColoredPartition.parse(other, "(-1)_1")


def test_str_and_parse_round_trip(A2):
    pi = P(A2, "(-5)_1 (-3)_8 (-2)_9^2")
    assert P(A2, str(pi)) == pi
    assert str(ColoredPartition.empty(A2)) == "1"


@given(st.data())
def test_json_round_trip(data):
    alph = Alphabet.build(["1", "2", "3"])
    pi = data.draw(colored(alph))
    assert ColoredPartition.from_json(alph, pi.to_json()) == pi


@given(st.data())
def test_product_is_commutative_and_additive(data):
    alph = Alphabet.build(["1", "2", "3"])
    x, y = data.draw(colored(alph)), data.draw(colored(alph))
    assert x * y == y * x
    assert (x * y).box_count() == x.box_count() + y.box_count()
    assert (x * y).contains(x) and (x * y).contains(y)


# --- plain partitions and oplus ---------------------------------------------------

@given(plain)
def test_column_heights_are_conjugate(delta):
    assert PlainPartition.from_column_heights(delta.column_heights()) == delta
    assert sum(delta.column_heights()) == delta.size()


def test_oplus_examples(A2):
    empty = PlainPartition(())
    pi = P(A2, "(-3)_2 (-1)_7")
    assert oplus(pi, empty) == pi
    assert oplus(P(A2, "(-1)_1"), PlainPartition((2,))) == P(A2, "(-2)_1 (-1)_4")
    assert oplus(ColoredPartition.empty(A2), PlainPartition((1, 1))) == P(A2, "(-2)_4")


@given(st.data(), plain)
def test_oplus_matches_staircase(data, delta):
    alph = Alphabet.build(["1", "2", "3"], ground="2")
    nu = data.draw(colored(alph))
    out = oplus(nu, delta)
    assert out == oplus_staircase(nu, delta)
    assert out.box_count() == nu.box_count() + delta.size()


# --- specializations ------------------------------------------------------------

def test_half_integer_shifts():
    alph = Alphabet.build(["1", "2"], [Weight.of(Fraction(1, 2)), Weight.of(Fraction(-1, 2))], rank=1)
    s = Specialization.principal(alph, 2)
    assert s.part_degree(-1, 0) == Fraction(3, 2)
    assert s.part_degree(-1, 1) == Fraction(5, 2)
    assert s.half_integral


def test_specialization_validation(A2):
    with pytest.raises(ValueError):
        Specialization(A2, 3, (0,) * 8)
    with pytest.raises(ValueError):
        Specialization(A2, 0, (0,) * 9)
    with pytest.raises(ValueError):
        Specialization(A2, 3, (Fraction(1, 3),) + (0,) * 8)


@given(st.data())
def test_degree_is_additive(data):
    alph = Alphabet.build(["1", "2", "3"])
    s = Specialization(alph, 3, (2, 0, -2))
    x, y = data.draw(colored(alph)), data.draw(colored(alph))
    assert (x * y).degree(s) == x.degree(s) + y.degree(s)
    assert Counter(x.counts()) == x.counts()
