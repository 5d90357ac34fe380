import json

import pytest
from hypothesis import given, strategies as st

from crystalrr.crystal import (
    A1_FOUR_TABLE,
    A1_THREE_TABLE,
    A2_TABLE,
    CATALOG_NAMES,
    Convention,
    CrystalError,
    CrystalGraph,
    EnergyMatrix,
    a1_four_graph,
    a1_three_graph,
    a2_graph,
    a3_graph,
    calibrate,
    catalog,
    order_from_energy,
    solve_energy,
    solve_energy_function,
    tensor_square,
)
from crystalrr.partitions import Weight


@pytest.fixture(scope="module")
def g2():
    return a2_graph()


def ix(g, label):
    return g.alphabet.index(label)


def test_epsilon_phi(g2):
    assert g2.epsilon_phi(ix(g2, "1"), 1) == (0, 1)
    assert g2.epsilon_phi(ix(g2, "4"), 1) == (0, 0)
    assert g2.epsilon_phi(ix(g2, "4"), 0) == (1, 1)
    assert g2.f(ix(g2, "9"), 0) == ix(g2, "4")
    assert g2.e(ix(g2, "1"), 0) == ix(g2, "4")


def test_weights_a2(g2):
    w = g2.alphabet.weight
    assert w(ix(g2, "1")) == Weight.of(1, 1)
    assert w(ix(g2, "7")) == Weight.of(-1, 0)
    assert w(ix(g2, "5")).is_zero()
    assert w(ix(g2, "4")).is_zero()
    assert w(ix(g2, "3")) == -w(ix(g2, "7")) == Weight.of(1, 0)
    assert w(ix(g2, "2")) == -w(ix(g2, "8")) == Weight.of(0, 1)
    assert w(ix(g2, "1")) == -w(ix(g2, "9"))


def test_weights_a3_sum_to_zero():
    g = a3_graph()
    total = Weight.zero(3)
    for c in range(g.alphabet.size):
        total = total + g.alphabet.weight(c)
    assert total.is_zero()
    assert g.alphabet.weight(ix(g, "14")) == Weight.of(1, 1, 1)
    assert g.alphabet.weight(ix(g, "11")).is_zero()


def test_tensor_square_shape(g2):
    sq = tensor_square(g2)
    assert len(sq.vertices) == 81
    comps = sq.components()
    four, one = ix(g2, "4"), ix(g2, "1")
    assert any((four, four) in c and (one, four) in c for c in comps)
    trivial = CrystalGraph.build(["a"], [], rank=1, ground="a")
    tsq = tensor_square(trivial)
    assert tsq.vertices == [(0, 0)] and tsq.arrows == ()


def test_tensor_square_is_a_crystal_graph(g2):
    # at most one outgoing and one incoming i-arrow per vertex
    sq = tensor_square(g2)
    out = [(s, i) for s, i, _, _ in sq.arrows]
    inc = [(t, i) for _, i, t, _ in sq.arrows]
    assert len(out) == len(set(out)) and len(inc) == len(set(inc))


def test_solve_energy_a2_matches_tabulated(g2):
    E = solve_energy(g2)
    assert E.rows() == [list(r) for r in A2_TABLE]
    assert E.by_label("1", "4") == 1
    assert E.by_label("4", "4") == 0
    assert E.rows()[0] == [2, 2, 2, 1, 2, 2, 2, 2, 2]


def test_calibration_is_unique(g2):
    target = EnergyMatrix.from_rows(g2.alphabet, A2_TABLE)
    assert calibrate(g2, target) == [Convention(True, -1)]


def test_energy_constant_on_classical_arrows(g2):
    H = solve_energy_function(g2)
    for s, i, t, _ in tensor_square(g2).arrows:
        if i != 0:
            assert H[s] == H[t]
        else:
            assert abs(H[s] - H[t]) == 1


@pytest.mark.parametrize(
    "graph, tabulated", [(a1_four_graph, A1_FOUR_TABLE), (a1_three_graph, A1_THREE_TABLE)]
)
def test_solver_reproduces_a1_tables(graph, tabulated):
    assert solve_energy(graph()).rows() == [list(r) for r in tabulated]


def test_a3_energy():
    g = a3_graph()
    E = solve_energy(g)
    assert E.size == 16 and E.in_range()
    a = g.alphabet.ground
    assert E(a, a) == 0
    assert len(tensor_square(g).components()) == 1


def test_catalog_entries():
    assert set(CATALOG_NAMES) == {
        "a2-basic", "a3-basic", "a1-four-color", "a1-three-color", "capparelli",
        "rr-single", "distinct-single", "half-int-distinct", "half-int-diff3", "mp3-gamma-prime",
    }
    assert catalog("a1-four-color").matrix.rows() == [[2, 1, 2, 2], [1, 0, 1, 1], [0, 1, 0, 2], [0, 1, 0, 2]]
    assert catalog("a1-three-color").matrix.rows() == [[2, 2, 2], [1, 1, 2], [0, 1, 2]]
    gp = catalog("mp3-gamma-prime")
    assert gp.alphabet.labels() == ["1", "2", "3", "5", "6", "7", "8", "9"]
    assert gp.matrix.by_label("9", "9") == 2
    assert catalog("a2-basic").derived and catalog("a3-basic").derived
    with pytest.raises(KeyError):
        catalog("nope")


def test_graph_validation():
    with pytest.raises(CrystalError, match="two outgoing"):
        CrystalGraph.build(["a", "b", "c"], [("a", 1, "b"), ("a", 1, "c")], rank=1)
    with pytest.raises(CrystalError, match="two incoming"):
        CrystalGraph.build(["a", "b", "c"], [("a", 1, "c"), ("b", 1, "c")], rank=1)
    with pytest.raises(CrystalError, match="cycle"):
        CrystalGraph.build(["a", "b"], [("a", 1, "b"), ("b", 1, "a")], rank=1)
    with pytest.raises(CrystalError):
        CrystalGraph.build(["a", "b"], [("a", 3, "b")], rank=1)


def test_inconsistent_weights_rejected():
    # 1-arrow a -> b and a second path a -> c -> b cannot both hold
    with pytest.raises(CrystalError, match="weight"):
        CrystalGraph.build(["a", "b", "c"], [("a", 1, "b"), ("a", 2, "c"), ("c", 2, "b")], rank=2, ground="a")


def test_from_json_and_load(tmp_path, g2):
    data = {
        "colors": g2.alphabet.labels(),
        "arrows": [[g2.alphabet.label(s), i, g2.alphabet.label(t)] for s, i, t in sorted(g2.arrows)],
        "ground": "4",
        "rank": 2,
    }
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(data))
    g = CrystalGraph.load(path)
    assert solve_energy(g).rows() == [list(r) for r in A2_TABLE]


def test_order_from_energy_respects_zeros(a3):
    E = a3.matrix
    rank = {c: k for k, c in enumerate(order_from_energy(E))}
    for a in range(E.size):
        for b in range(E.size):
            if a != b and E(a, b) == 0:
                assert rank[a] < rank[b]


def test_order_from_energy_detects_cycles():
    from crystalrr.partitions import Alphabet

    alph = Alphabet.build(["x", "y"])
    with pytest.raises(CrystalError):
        order_from_energy(EnergyMatrix.from_rows(alph, [[0, 0], [0, 0]]))


@given(st.lists(st.sampled_from([0, 1, 2]), min_size=9, max_size=9))
def test_energy_matrix_format_round_trip(entries):
    from crystalrr.partitions import Alphabet

    alph = Alphabet.build(["a", "b", "c"])
    E = EnergyMatrix.from_rows(alph, [entries[0:3], entries[3:6], entries[6:9]])
    lines = E.format().splitlines()[1:]
    assert [[int(x) for x in line.split()[1:]] for line in lines] == E.rows()
