"""The eight acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line; pytest prints them in the
terminal summary and ``python tests/test_acceptance.py`` prints them directly.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE, fixture_path  # noqa: E402

from lfquiver import fileformat  # noqa: E402
from lfquiver.decompose import INF, Barcode, decompose, rank_oracle  # noqa: E402
from lfquiver.exactalg import FieldSpec, Matrix  # noqa: E402
from lfquiver.filtration import (  # noqa: E402
    chain_closed_under_intersection,
    chain_gradation,
    chain_spans,
    nonspanning_example,
)
from lfquiver.generate import random_line, random_representation, random_tree_shape  # noqa: E402
from lfquiver.line import LineRep  # noqa: E402
from lfquiver.quiver import QuiverShape, classify  # noqa: E402
from lfquiver.roots import is_saturated, non_dynkin_witness, positive_roots, roots_bijection_check  # noqa: E402
from lfquiver.shapes import named_shape  # noqa: E402
from lfquiver.tailreduce import flei_theorem_check  # noqa: E402

FIELDS = [FieldSpec.gf(2), FieldSpec.gf(5), FieldSpec.rationals()]


def report(n: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {name} ({detail})"
    ACCEPTANCE.append(line)
    print(line)


def test_1_oracle_equivalence():
    rng = random.Random(101)
    start = time.perf_counter()
    mismatches = 0
    for i in range(1000):
        line = random_line(rng, FIELDS[i % 3], max_len=10, max_dim=5, equioriented=True)
        if decompose(line, check=False).barcode != rank_oracle(line):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    report(1, "decompose equals the rank oracle", ok, f"1000 windows, {mismatches} mismatches, {elapsed:.1f} s")
    assert ok


def test_2_decomposition_certificates():
    rng = random.Random(202)
    failures = []
    for i in range(1000):
        ends = (rng.choice(["zero", "stable"]), rng.choice(["zero", "stable"]))
        line = random_line(rng, FIELDS[i % 3], max_len=12, max_dim=6, ends=ends)
        cert = decompose(line).certificate
        if not cert.ok:
            failures.append((i, cert.failure))
    report(2, "verify passes on mixed windows", not failures, f"1000 windows, {len(failures)} failures")
    assert not failures, failures[:3]


def test_3_krull_schmidt_uniqueness():
    rng = random.Random(303)
    discrepancies = 0
    for i in range(200):
        ends = (rng.choice(["zero", "stable"]), rng.choice(["zero", "stable"]))
        line = random_line(rng, FIELDS[i % 3], max_len=10, max_dim=5, ends=ends, min_len=3)
        base = decompose(line).barcode
        zero_vertices = [0, line.length // 2, line.length - 1]
        for seed in range(10):
            for zv in zero_vertices:
                if decompose(line, seed=seed, zero_vertex=zv, check=False).barcode != base:
                    discrepancies += 1
    report(3, "barcodes independent of seed and zero vertex", discrepancies == 0, f"200 x 10 seeds x 3 zero vertices, {discrepancies} discrepancies")
    assert discrepancies == 0


def test_4_vprime_fixture():
    r = fileformat.parse(fixture_path("vprime.rep"))
    dec = decompose(r)
    expected = Barcode({(-INF, 0): 1, (-INF, 1): 1})
    dims_ok = [dec.barcode.dims_at(x) for x in (-5, 0, 1, 2)] == [2, 2, 1, 0]
    # stabilized truncations: k explicit copies of the stable end in a zero-extended window
    fs = r.field
    oracle_ok = True
    for k in (3, 6, 9):
        line = LineRep.from_lists(fs, [2] * k + [2, 1], [Matrix.identity(fs, 2)] * k + [[[1, 0]]], origin=-k)
        bc = rank_oracle(line)
        back = Barcode({(-INF if s == -k else s, t): m for (s, t), m in bc.items()})
        oracle_ok &= back == expected
    ok = dec.barcode == expected and dec.certificate.ok and dims_ok and oracle_ok
    report(4, "V' decomposes as [-inf,0] + [-inf,1]", ok, f"barcode {dec.barcode.lines()}, oracle on truncations {'agrees' if oracle_ok else 'differs'}")
    assert ok


def test_5_tail_theorems():
    rng = random.Random(505)
    violations, certified, undecided, checked = [], 0, 0, 0
    while checked < 500:
        fs = rng.choice([FieldSpec.gf(2), FieldSpec.gf(3)])
        q = random_tree_shape(rng, rng.randint(1, 6), rng.randint(1, 3))
        r = random_representation(rng, q, fs, max_dim=3)
        if r.total_dim() > 12:
            continue
        fc = flei_theorem_check(r, rng=rng)
        checked += 1
        certified += len(fc.certified)
        undecided += len(fc.uncertified)
        violations += fc.violations
    ok = not violations
    report(5, "tail theorems on tree quivers", ok, f"500 reps, {certified} certified summands, {undecided} undecided, {len(violations)} violations")
    assert ok, violations[:3]


def test_6_nonspanning_fixture():
    f = nonspanning_example()
    cells = chain_gradation(f)
    all_zero = all(c.is_zero() for c in cells.values())
    spans = chain_spans(f, cells)
    closed = chain_closed_under_intersection(f)
    ok = all_zero and not spans and not closed
    report(6, "nonspanning filtration", ok, f"cells zero={all_zero}, spanning={spans}, closed under intersection={closed}")
    assert ok


ADE = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "Ainf4", "Ainf6", "Ainfinf4", "Ainfinf6", "Dinf5", "Dinf6"]


def test_7_ade_bijection():
    bad = []
    counts = []
    for name in ADE:
        rep = roots_bijection_check(name, trials=4)
        window = named_shape(name)
        window = QuiverShape(window.vertices, window.arrows)
        bound = 6 if len(window.vertices) <= 8 else 4
        # the saturated root list must match what the check used
        saturated = is_saturated(window, bound) and positive_roots(window, bound) == rep.roots
        if not rep.ok or not saturated:
            bad.append(name)
        if name in ("A4", "D4", "E6", "E8"):
            counts.append(f"{name}: {len(rep.indecomposables)} = {len(rep.roots)}")
    report(7, "indecomposables match positive roots", not bad, f"{len(ADE)} shapes, {'; '.join(counts)}, failing: {bad or 'none'}")
    assert not bad


def _cyclic_graphs():
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= 5 and nx.is_connected(g) and g.number_of_edges() >= n:
            yield g


def test_8_non_dynkin_witnesses():
    fs = FieldSpec.gf(5)
    failed, total = [], 0
    for g in _cyclic_graphs():
        q = QuiverShape(tuple(g.nodes), tuple((min(e), max(e)) for e in g.edges))
        assert not classify(q).is_dynkin
        total += 1
        try:
            w = non_dynkin_witness(q, fs)
        except Exception as e:  # a missing witness is a failure, not a crash
            failed.append((sorted(g.edges), repr(e)))
            continue
        if not w.ok:
            failed.append((sorted(g.edges), w.certificates))
    report(8, "witnesses on cyclic graphs", not failed, f"{total} graphs on <= 5 vertices, {len(failed)} failures")
    assert not failed, failed[:3]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
