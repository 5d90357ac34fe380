from collections import Counter

import pytest
from hypothesis import given, strategies as st

from crystalrr.crystal import EnergyMatrix, catalog
from crystalrr.harness import get_case
from crystalrr.partitions import Alphabet, ColoredPartition
from crystalrr.rules import (
    ForbiddenPattern,
    LayerModel,
    adjacent_pairs_ok,
    build_rules,
    check_order_compat,
    check_symmetry,
    check_three_term,
    check_triangle,
    pair_admissible,
    permutation_from_cycles,
    rules_from_json,
    satisfies,
    satisfies_counts,
    violates_with,
    violations,
)


def P(alph, text):
    return ColoredPartition.parse(alph, text)


def matrix(rows, labels=None):
    labels = labels or [str(k + 1) for k in range(len(rows))]
    return EnergyMatrix.from_rows(Alphabet.build(labels), rows)


def naive_satisfies(counts: Counter, D) -> bool:
    """Scan every pattern at every value that could possibly matter."""
    low = min((v for v, _ in counts), default=-1)
    for p in D.patterns:
        for i in range(low, 0):
            need = p.at(i)
            if all(counts[k] >= m for k, m in need.items()):
                return False
    return True


def partitions_over(alph, max_value=4, max_parts=6):
    part = st.tuples(st.integers(-max_value, -1), st.integers(0, alph.size - 1))
    return st.lists(part, max_size=max_parts).map(lambda ps: ColoredPartition.of(alph, ps))


# --- building D ---------------------------------------------------------------------

def test_generators_match_definition(E2, D2):
    n = E2.size
    expected = set()
    for a in range(n):
        for b in range(n):
            if E2(a, b) * E2(b, a) >= 1:
                expected.add(ForbiddenPattern.of((0, a), (0, b)))
            if E2(a, b) == 2:
                expected.add(ForbiddenPattern.of((1, a), (0, b)))
    assert D2.patterns == frozenset(expected)


def test_a2_contains_8_9_patterns(A2, D2):
    e, n = A2.index("8"), A2.index("9")
    assert ForbiddenPattern.of((0, e), (0, n)) in D2.patterns
    assert ForbiddenPattern.of((1, e), (0, n)) in D2.patterns


def test_single_color_rule_sets():
    assert build_rules(matrix([[0]])).patterns == frozenset()
    two = build_rules(matrix([[2]]))
    assert two.patterns == {ForbiddenPattern.of((0, 0), (0, 0)), ForbiddenPattern.of((1, 0), (0, 0))}


def test_pattern_validation():
    with pytest.raises(ValueError):
        ForbiddenPattern.of((2, 0), (0, 1))
    with pytest.raises(ValueError):
        ForbiddenPattern.of((1, 0))
    with pytest.raises(ValueError):
        ForbiddenPattern(())
    with pytest.raises(ValueError):
        build_rules(matrix([[3]]))


def test_rules_json_round_trip():
    case = get_case("mp3-gamma-prime")
    D = case.rules
    back = rules_from_json(D.alphabet, D.to_json())
    assert back.patterns == D.patterns and back.extras == D.extras


# --- membership ---------------------------------------------------------------------

def test_membership_examples(A2, D2):
    assert not satisfies(P(A2, "(-5)_1 (-3)_8 (-2)_9"), D2)
    assert satisfies(ColoredPartition.empty(A2), D2)
    assert satisfies(P(A2, "(-1)_4 (-1)_4"), D2)
    assert naive_satisfies(P(A2, "(-1)_4^2").counts(), D2)
    pats = violations(P(A2, "(-5)_1 (-3)_8 (-2)_9").counts(), D2)
    assert [(p.describe(A2), i) for p, i in pats] == [("(i-1)_8 i_9", -2)]


def test_pair_admissible_examples(A2, D2):
    ix = A2.index
    assert not pair_admissible((-3, ix("8")), (-2, ix("9")), D2)
    assert pair_admissible((-4, ix("1")), (-2, ix("9")), D2)
    assert pair_admissible((-1, ix("4")), (-1, ix("4")), D2)
    with pytest.raises(ValueError):
        pair_admissible((-2, ix("9")), (-3, ix("8")), D2)


@pytest.mark.parametrize("name", ["a2-basic", "a3-basic"])
def test_pair_criterion_is_gap_criterion(name):
    # two-part members of the ideal are exactly the pairs with |i - j| >= E
    D = get_case(name).rules
    alph = D.alphabet
    n = alph.size
    for i in (-3, -2, -1):
        for j in (-3, -2, -1):
            for a in range(n):
                for b in range(n):
                    x, y = (i, a), (j, b)
                    if alph.part_key(*x) > alph.part_key(*y):
                        continue
                    gap = abs(i - j) >= D.matrix(a, b)
                    assert gap == satisfies_counts(Counter([x, y]), D)
                    assert gap == pair_admissible(x, y, D)


@pytest.mark.parametrize("name", ["a2-basic", "a3-basic", "a1-three-color", "mp3-gamma-prime", "half-int-diff3"])
@given(data=st.data())
def test_membership_agrees_with_naive_scan(name, data):
    D = get_case(name).rules
    pi = data.draw(partitions_over(D.alphabet))
    expected = naive_satisfies(pi.counts(), D)
    assert satisfies(pi, D) == expected
    assert LayerModel(D).satisfies(pi) == expected


@given(data=st.data())
def test_adjacent_gaps_decide_membership_for_a2(data, D2, A2):
    # with the order compatibility and triangle properties, consecutive gaps suffice
    pi = data.draw(partitions_over(A2))
    assert adjacent_pairs_ok(pi, D2) == satisfies(pi, D2)


@given(data=st.data())
def test_ideal_is_closed_under_removal(data, D2, A2):
    pi = data.draw(partitions_over(A2))
    if satisfies(pi, D2) and len(pi):
        listing = pi.listing()
        k = data.draw(st.integers(0, len(listing) - 1))
        rest = ColoredPartition.of(A2, listing[:k] + listing[k + 1:])
        assert satisfies(rest, D2)


@given(data=st.data())
def test_violates_with_is_incremental(data):
    D = get_case("mp3-gamma-prime").rules
    alph = D.alphabet
    pi = data.draw(partitions_over(alph, max_parts=4))
    if not satisfies(pi, D):
        return
    part = (data.draw(st.integers(-4, -1)), data.draw(st.integers(0, alph.size - 1)))
    counts = pi.counts()
    grown = Counter(counts)
    grown[part] += 1
    assert violates_with(counts, part, D) == (not satisfies_counts(grown, D))
    assert counts == pi.counts()


# --- structural checks --------------------------------------------------------------

def test_triangle(E2, a3):
    assert check_triangle(E2)[0]
    assert check_triangle(a3.matrix)[0]
    ok, bad = check_triangle(matrix([[2, 0], [0, 2]]))
    assert not ok and (0, 1, 0) in bad
    # every reported triple really violates the inequality
    E = matrix([[2, 0], [0, 2]])
    assert all(E(a, c) > E(a, b) + E(b, c) for a, b, c in bad)


def test_triangle_on_matrix_without_violation():
    # a hand-made matrix with a single 2 above the diagonal still satisfies it
    assert check_triangle(matrix([[0, 2], [0, 0]]))[0]


def test_order_compat(E2, a3):
    assert check_order_compat(E2)[0]
    assert check_order_compat(matrix([[0]]))[0]
    assert check_order_compat(a3.matrix)[0]
    reversed_order = tuple(reversed(E2.alphabet.order))
    ok, bad = check_order_compat(E2, reversed_order)
    assert not ok and bad


def test_symmetry(E2, A2):
    sigma = permutation_from_cycles(A2, [("2", "3"), ("5", "6"), ("7", "8")])
    assert check_symmetry(E2, sigma)
    assert check_symmetry(E2, {})
    assert not check_symmetry(E2, permutation_from_cycles(A2, [("1", "9")]))
    with pytest.raises(ValueError):
        check_symmetry(E2, {0: 1})


@pytest.mark.parametrize("name", ["a2-basic", "a3-basic", "a1-three-color", "rr-single"])
def test_three_term_lemma(name):
    assert check_three_term(get_case(name).rules) == []


def test_three_term_lemma_can_fail():
    # x z forbidden at the same value while y is compatible with both
    E = matrix([[1, 0, 1], [0, 0, 0], [1, 0, 1]], ["a", "b", "c"])
    assert check_three_term(build_rules(E))
