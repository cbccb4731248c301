from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfquiver.errors import DimensionMismatch, NotContained
from lfquiver.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    complement_in,
    contains,
    image,
    intersect,
    kernel,
    preimage,
    rref,
    solve_within,
    subspace_sum,
)
from lfquiver.generate import random_matrix

from conftest import FIELDS


def span(fs, d, *vs):
    return Subspace.span(fs, d, vs)


def test_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        FieldSpec.gf(6)
    assert FieldSpec.gf(65521).p == 65521


def test_field_parse_and_elements():
    assert FieldSpec.parse("GF(5)") == FieldSpec.gf(5)
    assert FieldSpec.parse("Q").is_rational
    q = FieldSpec.rationals()
    assert q.elem("3/6") == Fraction(1, 2)
    assert FieldSpec.gf(5).elem(Fraction(1, 2)) == 3
    assert FieldSpec.gf(7).inv(3) == 5


def test_rref_examples(gf5):
    m = Matrix.from_rows(gf5, [[2, 4], [1, 2]])
    assert rref(m).data == ((1, 2),)
    eye = Matrix.identity(gf5, 2)
    assert rref(eye) == eye
    assert rref(Matrix.zeros(gf5, 2, 3)).rows == 0


def test_image_examples(gf2, gf5):
    proj = Matrix.from_rows(gf5, [[1, 0], [0, 0]])
    assert image(proj, Subspace.full(gf5, 2)) == span(gf5, 2, (1, 0))
    s = span(gf5, 2, (1, 3))
    assert image(Matrix.identity(gf5, 2), s) == s
    t = Matrix.from_rows(gf2, [[1, 1], [0, 0]])
    assert image(t, span(gf2, 2, (1, 1))).is_zero()


def test_image_dimension_mismatch(gf5):
    with pytest.raises(DimensionMismatch):
        image(Matrix.identity(gf5, 3), Subspace.full(gf5, 2))


def test_preimage_examples(gf5):
    proj = Matrix.from_rows(gf5, [[1, 0], [0, 0]])
    assert preimage(proj, span(gf5, 2, (1, 0))).is_full()
    assert preimage(proj, Subspace.zero(gf5, 2)) == span(gf5, 2, (0, 1))
    s = span(gf5, 2, (2, 1))
    assert preimage(Matrix.identity(gf5, 2), s) == s


def test_sum_and_intersection_examples(gf2, gf5):
    a, b = span(gf5, 2, (1, 0)), span(gf5, 2, (0, 1))
    assert subspace_sum(a, b).is_full()
    assert intersect(a, b).is_zero()
    u = span(gf2, 3, (1, 1, 0), (0, 0, 1))
    w = span(gf2, 3, (1, 1, 1))
    assert intersect(u, w) == w


def test_complement_examples(gf5):
    inner = span(gf5, 2, (1, 0))
    assert complement_in(inner, Subspace.full(gf5, 2), 0) == span(gf5, 2, (0, 1))
    assert complement_in(inner, inner, 3).is_zero()
    s = span(gf5, 3, (1, 2, 0), (0, 0, 1))
    assert complement_in(Subspace.zero(gf5, 3), s, 0) == s
    with pytest.raises(NotContained):
        complement_in(span(gf5, 2, (0, 1)), inner)


def test_contains_examples(gf5):
    s = span(gf5, 2, (1, 0))
    assert contains(s, (1, 0))
    assert not contains(s, (0, 1))
    assert contains(Subspace.zero(gf5, 2), (0, 0))
    assert (3, 0) in s


def test_rref_canonical_equality(qq):
    a = span(qq, 3, (1, 2, 3), (0, 1, 1))
    b = span(qq, 3, (1, 3, 4), (2, 4, 6))
    assert a == b
    assert a.basis[0][0] == 1


def test_kernel_and_solve_within(gf5):
    t = Matrix.from_rows(gf5, [[1, 1, 0], [0, 0, 1]])
    k = kernel(t)
    assert k == span(gf5, 3, (1, 4, 0))
    x = solve_within(t, Subspace.full(gf5, 3), (2, 3))
    assert t.apply(x) == (2, 3)
    assert solve_within(t, span(gf5, 3, (0, 0, 1)), (1, 0)) is None


# -- properties


def matrices(draw_fs=st.sampled_from(FIELDS)):
    @st.composite
    def build(draw):
        fs = draw(draw_fs)
        rows = draw(st.integers(0, 5))
        cols = draw(st.integers(0, 5))
        seed = draw(st.integers(0, 10**6))
        rank = draw(st.one_of(st.none(), st.integers(0, min(rows, cols))))
        return random_matrix(fs, rows, cols, random.Random(seed), rank=rank)

    return build()


def random_subspace(fs, d, rng):
    k = rng.randint(0, d + 1)
    return Subspace.span(fs, d, [[fs.random_element(rng) for _ in range(d)] for _ in range(k)])


@settings(max_examples=150, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_image_preimage_adjunction(t, seed):
    rng = random.Random(seed)
    s = random_subspace(t.field, t.cols, rng)
    back = preimage(t, image(t, s))
    assert s <= back
    if t.is_injective():
        assert back == s
    s2 = random_subspace(t.field, t.rows, rng)
    forth = image(t, preimage(t, s2))
    assert forth <= s2
    if t.is_surjective():
        assert forth == s2


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 6), st.integers(0, 10**6))
def test_modular_law(fs, d, seed):
    rng = random.Random(seed)
    a, b = random_subspace(fs, d, rng), random_subspace(fs, d, rng)
    assert subspace_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim
    assert intersect(a, b) <= a and a <= subspace_sum(a, b)


def test_complement_properties_1000_triples():
    rng = random.Random(11)
    for _ in range(1000):
        fs = rng.choice(FIELDS)
        d = rng.randint(0, 6)
        outer = random_subspace(fs, d, rng)
        inner = Subspace.span(fs, d, [b for b in outer.basis if rng.random() < 0.5])
        x = complement_in(inner, outer, rng.choice([0, rng.randint(1, 99)]))
        assert inner.dim + x.dim == outer.dim
        assert intersect(inner, x).is_zero()
        assert subspace_sum(inner, x) == outer


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    r = rref(m)
    assert rref(r) == r
    assert r.rows == m.rank()


def test_numpy_rref_path_matches_pure_python():
    fs = FieldSpec.gf(101)
    rng = random.Random(5)
    m = random_matrix(fs, 40, 40, rng, rank=23)
    # forty by forty crosses the numpy threshold; a thin slice stays in pure Python
    assert m.rank() == 23
    cols = [Subspace.span(fs, 40, [row[:] for row in m.data[i : i + 1]]) for i in range(40)]
    total = cols[0]
    for c in cols[1:]:
        total = subspace_sum(total, c)
    assert total == Subspace.span(fs, 40, m.data)
