from __future__ import annotations

import random

import networkx as nx
import pytest

from lfquiver.errors import Disconnected, InvalidShape
from lfquiver.quiver import (
    AInfinity,
    AInfinityInfinity,
    DInfinity,
    QuiverShape,
    TailDecl,
    analyze,
    classify,
    find_tails,
    path_order,
)
from lfquiver.roots import is_positive_definite
from lfquiver.shapes import named_shape, star

DYNKIN_NAMES = [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 9)] + ["E6", "E7", "E8"]


def from_graph(g) -> QuiverShape:
    return QuiverShape(tuple(g.nodes), tuple((min(u, v), max(u, v)) for u, v in g.edges))


def test_shape_rejects_loops_and_multi_edges():
    with pytest.raises(InvalidShape):
        QuiverShape((1,), ((1, 1),))
    with pytest.raises(InvalidShape):
        QuiverShape((1, 2), ((1, 2), (2, 1)))
    with pytest.raises(InvalidShape):
        QuiverShape((1,), (), (TailDecl(9),))


def test_analyze_examples():
    tri = QuiverShape((1, 2, 3), ((1, 2), (2, 3), (3, 1)))
    assert analyze(tri).is_tree is False
    out = analyze(QuiverShape((0,), (), (TailDecl(0, "toward_infinity"),)))
    assert out.is_tree and out.is_eventually_outward
    assert not analyze(QuiverShape((0,), (), (TailDecl(0, "toward_attach"),))).is_eventually_outward


def test_classify_examples():
    assert str(classify(named_shape("A5"))) == "A(5)"
    both = QuiverShape((1, 2, 3), ((1, 2), (3, 2)), (TailDecl(1), TailDecl(3, "toward_attach")))
    assert classify(both) == AInfinityInfinity
    assert classify(star((2, 2, 2))).family == "NotDynkin"
    assert "leg-length" in classify(star((2, 2, 2))).reason
    assert str(classify(star((1, 2, 2)))) == "E(6)"
    assert str(classify(star((1, 2, 3)))) == "E(7)"
    assert str(classify(star((1, 2, 4)))) == "E(8)"
    assert classify(star((1, 2, 5))).family == "NotDynkin"
    assert str(classify(star((1, 1, 5)))) == "D(8)"


def test_classify_infinite_types():
    assert classify(named_shape("Ainf3")) == AInfinity
    assert classify(named_shape("Ainfinf4")) == AInfinityInfinity
    assert classify(named_shape("Dinf5")) == DInfinity
    lone = QuiverShape((0,), (), (TailDecl(0), TailDecl(0)))
    assert classify(lone) == AInfinityInfinity
    three = QuiverShape((0,), (), (TailDecl(0), TailDecl(0), TailDecl(0)))
    assert classify(three).family == "NotDynkin"


def test_classify_obstruction_reasons():
    assert "cycle" in classify(named_shape("C4")).reason
    assert "degree 4" in classify(named_shape("Dt4")).reason
    assert "two branch" in classify(named_shape("Dt6")).reason
    with pytest.raises(Disconnected):
        classify(QuiverShape((1, 2)))


def test_classify_is_orientation_independent():
    rng = random.Random(3)
    for name in DYNKIN_NAMES + ["Dinf6", "Ainfinf3", "C5", "Et7"]:
        q = named_shape(name)
        flipped = QuiverShape(q.vertices, tuple((b, a) if rng.random() < 0.5 else (a, b) for a, b in q.arrows), q.tails)
        assert classify(flipped) == classify(q) == classify(q.reversed())


def _expected_dynkin(g) -> bool:
    return is_positive_definite(from_graph(g))


def test_exhaustive_classification_up_to_seven_vertices():
    # every graph in the atlas (all graphs on at most seven vertices)
    dynkin = 0
    for g in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(g):
            continue
        q = from_graph(g)
        cls = classify(q)
        assert cls.is_finite == _expected_dynkin(g), (list(g.edges), cls)
        dynkin += cls.is_finite
    # A1..A7, D4..D7, E6, E7
    assert dynkin == 7 + 4 + 2


def test_exhaustive_classification_eight_vertices():
    trees = list(nx.nonisomorphic_trees(8))
    assert len(trees) == 23
    found = sorted(str(classify(from_graph(t))) for t in trees if classify(from_graph(t)).is_finite)
    assert found == ["A(8)", "D(8)", "E(8)"]
    for t in trees:
        assert classify(from_graph(t)).is_finite == _expected_dynkin(t)
    # graphs with cycles on eight vertices: a seeded sample
    rng = random.Random(8)
    for _ in range(200):
        g = nx.gnm_random_graph(8, rng.randint(8, 20), seed=rng.randrange(10**6))
        if nx.is_connected(g):
            assert not classify(from_graph(g)).is_dynkin
            assert not _expected_dynkin(g)


def test_bruteforce_and_sylvester_agree_on_small_graphs():
    for g in nx.graph_atlas_g()[1:200]:
        if nx.is_connected(g):
            q = from_graph(g)
            assert is_positive_definite(q, "bruteforce") == is_positive_definite(q, "sylvester")


def test_find_tails_dinfinity_starts_at_branch_vertex():
    q = QuiverShape(("z1", "z2", "x0", "x1"), (("z1", "x0"), ("z2", "x0"), ("x0", "x1")), (TailDecl("x1"),))
    (tc,) = find_tails(q)
    assert tc.chain == ("x0", "x1")
    assert tc.root == "x0"


def test_find_tails_counts():
    assert find_tails(named_shape("A5")) == []
    both = named_shape("Ainfinf4")
    tails = find_tails(both)
    assert len(tails) == 2
    # each walk runs until the vertex carrying the other tail
    assert tails[0].chain == (4, 3, 2, 1)
    assert tails[1].chain == (1, 2, 3, 4)


def test_find_tails_long_leg():
    q = named_shape("Dinf6")
    (tc,) = find_tails(q)
    assert tc.chain == (4, 3, 2, 1)


def test_path_order():
    q = QuiverShape(("c", "a", "b"), (("a", "b"), ("c", "b")), (TailDecl("c"),))
    assert path_order(q) == ["c", "b", "a"]
    assert path_order(named_shape("A4")) == [1, 2, 3, 4]
    with pytest.raises(InvalidShape):
        path_order(named_shape("D4"))
