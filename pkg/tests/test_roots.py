from __future__ import annotations


import pytest
from hypothesis import given, strategies as st

from lfquiver.errors import InfiniteSupport, NoWitnessFound
from lfquiver.exactalg import FieldSpec
from lfquiver.quiver import QuiverShape, TailDecl
from lfquiver.roots import (
    KNOWN_MAX_ENTRY,
    TitsForm,
    find_obstruction,
    is_positive_definite,
    is_saturated,
    non_dynkin_witness,
    positive_roots,
    roots_bijection_check,
    tits,
)
from lfquiver.shapes import cycle, named_shape, star

A2 = QuiverShape((1, 2), ((1, 2),))


def test_tits_examples():
    assert tits(A2, (1, 1)) == 1
    assert tits(cycle(3), (1, 1, 1)) == 0
    for name in ["A1", "D5", "E7", "C4", "Dt4", "Ainf3"]:
        q = named_shape(name)
        for i in range(len(q.vertices)):
            e = [0] * len(q.vertices)
            e[i] = 1
            assert tits(q, e) == 1
    with pytest.raises(InfiniteSupport):
        tits(named_shape("Ainf3"), (1, 1, 1), tail_values=(1,))


@given(st.lists(st.integers(0, 4), min_size=5, max_size=5), st.lists(st.booleans(), min_size=5, max_size=5))
def test_tits_orientation_independent(d, flips):
    base = named_shape("Dt4")
    arrows = tuple((t, s) if f else (s, t) for (s, t), f in zip(base.arrows, flips))
    other = QuiverShape(base.vertices, arrows)
    assert tits(base, d) == tits(other, d)
    g = TitsForm(base).gram()
    assert 2 * tits(base, d) == sum(d[i] * g[i][j] * d[j] for i in range(5) for j in range(5))


# brute-force counts frozen from the numpy enumeration
ROOT_COUNTS = {"A1": 1, "A3": 6, "A4": 10, "A6": 21, "D4": 12, "D5": 20, "D6": 30, "E6": 36, "E7": 63}


@pytest.mark.parametrize("name", sorted(ROOT_COUNTS))
def test_root_counts(name):
    q = named_shape(name)
    roots = positive_roots(q, 3 if name != "E7" else 4)
    assert len(roots) == ROOT_COUNTS[name]
    key = name[1:] if name[0] == "E" else name[0]
    assert max(max(r) for r in roots) == KNOWN_MAX_ENTRY[int(key) if key.isdigit() else key]


def test_small_examples_and_saturation():
    assert positive_roots(named_shape("A1"), 1) == [(1,)]
    a3 = positive_roots(named_shape("A3"), 3)
    assert a3 == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)])
    assert len(positive_roots(named_shape("D4"), 3)) == 12
    for name in ["A4", "D5", "E6"]:
        assert is_saturated(named_shape(name), 3)
    with pytest.raises(ValueError):
        positive_roots(A2, 0)


def test_positive_definiteness():
    for name in ["A5", "D6", "E6", "E8"]:
        q = named_shape(name)
        assert is_positive_definite(q) and is_positive_definite(q, method="bruteforce")
    for name in ["C3", "Dt4", "Dt5", "Et6"]:
        q = named_shape(name)
        assert not is_positive_definite(q) and not is_positive_definite(q, method="bruteforce")


def test_bijection_a_types():
    for name, n in [("A1", 1), ("A4", 10)]:
        rep = roots_bijection_check(name)
        assert rep.ok and len(rep.indecomposables) == n and len(rep.roots) == n
    # another orientation of A4
    zig = QuiverShape((1, 2, 3, 4), ((2, 1), (2, 3), (4, 3)))
    assert roots_bijection_check(zig).ok
    rep = roots_bijection_check("Ainfinf6")
    assert rep.ok and len(rep.roots) == 21
    # the extra indecomposables are unbounded on one or both sides of the window
    assert len(rep.indecomposables) > 21


def test_bijection_d_and_e():
    for name, n in [("D4", 12), ("D5", 20), ("E6", 36)]:
        rep = roots_bijection_check(name, trials=4)
        assert rep.ok, rep.failures
        assert len(rep.roots) == n
    assert roots_bijection_check("Dinf5", trials=4).ok


def test_triangle_witness():
    w = non_dynkin_witness("C3", FieldSpec.gf(5))
    assert w.ok and w.obstruction == "cycle"
    assert w.rep1.dimension_vector() == w.rep2.dimension_vector()
    prod = lambda r: [m[0, 0] for m in r.maps.values()]
    p1, p2 = prod(w.rep1), prod(w.rep2)
    assert sorted(p1) == [1, 1, 1] and sorted(p2) == [1, 1, 2]


def test_extended_d4_witness_over_gf2():
    w = non_dynkin_witness("Dt4", FieldSpec.gf(2))
    assert w.ok
    d = w.rep1.dimension_vector()
    assert sorted(d.values()) == [1, 1, 1, 1, 2]


@pytest.mark.parametrize("name", ["Dt5", "Dt6", "Et6", "Et7", "C4", "C5"])
def test_more_witnesses(name):
    assert non_dynkin_witness(name, FieldSpec.gf(3)).ok


def test_witnesses_through_tails():
    # a vertex of degree four made by a tail, and three tails on one centre
    q = QuiverShape((0, 1, 2, 3), ((1, 0), (2, 0), (3, 0)), (TailDecl(0),))
    assert non_dynkin_witness(q).ok
    three = QuiverShape((0,), (), (TailDecl(0), TailDecl(0, "toward_attach"), TailDecl(0)))
    assert non_dynkin_witness(three).ok


def test_dynkin_shapes_have_no_witness():
    for name in ["A4", "D5", "E8", "Ainfinf3", "Dinf4"]:
        with pytest.raises(NoWitnessFound):
            non_dynkin_witness(name)


def test_obstruction_kinds():
    assert find_obstruction(cycle(4))[1] == "cycle"
    assert find_obstruction(star((1, 1, 1, 1)))[1] == "star"
    q, kind, d = find_obstruction(named_shape("Et6"))
    assert tits(q, [d.get(v, 0) for v in q.vertices]) == 0
