from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lfquiver import fileformat
from lfquiver.decompose import (
    INF,
    Barcode,
    IntervalSummand,
    assemble,
    decompose,
    format_barcode,
    parse_barcode,
    rank_oracle,
    verify,
)
from lfquiver.errors import NotEquioriented
from lfquiver.exactalg import FieldSpec, Matrix, Subspace
from lfquiver.generate import interval_line, random_line
from lfquiver.line import LineRep, dual, reflect, to_representation
from lfquiver.roots import tits
from lfquiver.filtration import propagate_all

from conftest import fixture_path


def test_a3_example(gf5):
    a3 = LineRep.from_lists(gf5, [1, 1, 1], [[[1]], [[0]]], origin=1)
    dec = decompose(a3)
    assert dec.barcode == Barcode({(1, 2): 1, (3, 3): 1})
    assert dec.certificate.ok
    assert rank_oracle(a3) == dec.barcode


def test_a3_fixture_file():
    dec = decompose(fileformat.parse(fixture_path("a3.rep")))
    assert dec.barcode.lines() == ["[1,2] x 1", "[3,3] x 1"]


def test_vprime():
    r = fileformat.parse(fixture_path("vprime.rep"))
    dec = decompose(r)
    assert dec.barcode == Barcode({(-INF, 0): 1, (-INF, 1): 1})
    assert dec.certificate.ok
    kinds = {(sm.s, sm.t): sm.kind for sm in dec.summands}
    assert kinds == {(-INF, 0): ("n", "m"), (-INF, 1): ("n", "m")}


def test_vprime_against_a_long_truncation(gf5):
    # replace the stable left end by many explicit copies of F^2
    k = 8
    ident = Matrix.identity(gf5, 2)
    line = LineRep.from_lists(gf5, [2] * k + [2, 1], [ident] * k + [[[1, 0]]], origin=-k)
    bc = rank_oracle(line)
    assert bc == Barcode({(-k, 0): 1, (-k, 1): 1})


def test_zero_and_identity_blocks(gf2):
    z = LineRep.from_lists(gf2, [0, 0], [[]])
    dec = decompose(z)
    assert dec.barcode == Barcode() and dec.summands == [] and dec.certificate.ok
    assert rank_oracle(z) == Barcode()
    for d in (1, 2, 3):
        ident = Matrix.identity(gf2, d)
        line = LineRep.from_lists(gf2, [d] * 4, [ident] * 3)
        dec = decompose(line)
        assert dec.barcode == Barcode({(0, 3): d})
        assert len(dec.summands) == 1 and dec.summands[0].multiplicity == d
        assert rank_oracle(line) == Barcode({(0, 3): d})


def test_rank_oracle_rejects_zigzags(gf5):
    zig = LineRep.from_lists(gf5, [1, 1, 1], [[[1]], [[1]]], forward=[True, False])
    with pytest.raises(NotEquioriented):
        rank_oracle(zig)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 5]))
def test_oracle_agreement(seed, p):
    rng = random.Random(seed)
    line = random_line(rng, FieldSpec.gf(p), max_len=8, max_dim=4, equioriented=True)
    dec = decompose(line)
    assert dec.certificate.ok
    assert dec.barcode == rank_oracle(line)


def test_invariance_under_seed_zero_vertex_and_reflection():
    rng = random.Random(11)
    for _ in range(60):
        fs = rng.choice([FieldSpec.gf(2), FieldSpec.gf(5), FieldSpec.rationals()])
        ends = (rng.choice(["zero", "stable"]), rng.choice(["zero", "stable"]))
        line = random_line(rng, fs, max_len=7, max_dim=4, ends=ends)
        base = decompose(line).barcode
        for seed in range(1, 5):
            assert decompose(line, seed=seed, check=False).barcode == base
        for zv in range(line.length):
            assert decompose(line, zero_vertex=zv, check=False).barcode == base
        assert decompose(reflect(line)).barcode == base.reflected()
        assert decompose(dual(line)).barcode == base


def test_dimension_identity_and_thin_summands():
    rng = random.Random(12)
    for _ in range(80):
        fs = rng.choice([FieldSpec.gf(3), FieldSpec.rationals()])
        line = random_line(rng, fs, max_len=8, max_dim=4)
        dec = decompose(line)
        for l in range(line.length):
            assert dec.barcode.dims_at(line.coordinate(l)) == line.dims[l]
        # each summand of multiplicity 1 is a thin interval with tits form 1
        for sm in dec.summands:
            if sm.multiplicity == 1 and sm.s != -INF and sm.t != INF:
                d = tuple(1 if l in sm.spaces else 0 for l in range(line.length))
                shape = to_representation(line).shape
                assert tits(shape, d) == 1


def test_verify_negative_control(gf5):
    rng = random.Random(13)
    caught = 0
    for _ in range(60):
        line = random_line(rng, gf5, max_len=6, max_dim=3, min_len=2)
        dec = decompose(line)
        if len(dec.summands) < 2:
            continue
        sm = dec.summands[0]
        l = sm.support()[0]
        other = next((o for o in dec.summands[1:] if l in o.spaces), None)
        if other is None:
            continue
        # move one basis vector of sm onto a vector of another summand
        bad_basis = list(sm.bases[l])
        bad_basis[0] = other.bases[l][0]
        bad = IntervalSummand(sm.s, sm.t, sm.kind, dict(sm.spaces), dict(sm.bases))
        bad.bases[l] = tuple(bad_basis)
        bad.spaces[l] = Subspace.span(gf5, line.dims[l], bad_basis)
        summands = [bad if x is sm else x for x in dec.summands]
        cert = verify(line, summands)
        assert not cert.ok
        assert cert.failure.split(" @ ")[0] in ("subrepresentation", "independent", "spanning", "interior isomorphism", "thin strands", "boundary zero", "support")
        caught += 1
    assert caught > 10


def test_verify_zero_rep_vacuous(gf2):
    z = LineRep.from_lists(gf2, [0], [])
    assert verify(z, []).ok


def test_assemble_identity_window(gf5):
    ident = Matrix.identity(gf5, 2)
    line = LineRep.from_lists(gf5, [2] * 4, [ident] * 3)
    grads, _ = propagate_all(line)
    summands = assemble(line, grads)
    assert [(s.s, s.t, s.multiplicity) for s in summands] == [(0, 3, 2)]


def test_interval_indicators_decompose_to_themselves():
    fs = FieldSpec.gf(2)
    rng = random.Random(14)
    for _ in range(100):
        n = rng.randint(1, 7)
        s = rng.randrange(n)
        t = rng.randint(s, n - 1)
        fwd = [rng.random() < 0.5 for _ in range(n - 1)]
        ends = (rng.choice(["zero", "stable"]) if s == 0 else "zero", rng.choice(["zero", "stable"]) if t == n - 1 else "zero")
        line = interval_line(fs, n, s, t, fwd, ends=ends)
        ss = -INF if ends[0] == "stable" else s
        tt = INF if ends[1] == "stable" else t
        assert decompose(line).barcode == Barcode({(ss, tt): 1})


def test_barcode_text_round_trip():
    bc = Barcode({(-INF, 0): 1, (-INF, 1): 2, (3, 5): 1, (4, INF): 3})
    text = format_barcode(bc)
    assert text.splitlines()[0] == "[-inf,0] x 1"
    assert parse_barcode(text) == bc
