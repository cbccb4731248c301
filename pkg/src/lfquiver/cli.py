"""Command line entry point: ``lfquiver <command> ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import fileformat
from .decompose import decompose, rank_oracle
from .errors import CoreTooLarge, NoWitnessFound, QuiverError
from .exactalg import FieldSpec
from .filtration import chain_closed_under_intersection, chain_gradation, chain_spans, nonspanning_example
from .quiver import QuiverShape, analyze, classify, find_tails
from .repn import is_flei
from .roots import non_dynkin_witness, positive_roots
from .shapes import named_shape
from .tailreduce import check_tail, flei_theorem_check

OK, FAILED, BAD_INPUT = 0, 1, 2


def _out(line: str = ""):
    print(line)


def _fmt_matrix(m) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.data) + "]"


def _decompose_one(path, seed, zero_vertex, check) -> int:
    rf = fileformat.load(path)
    seed = rf.seed if seed is None else seed
    dec = decompose(rf.rep, seed=seed, zero_vertex=zero_vertex, check=check)
    for line in dec.barcode.lines():
        _out(line)
    if check:
        _out(dec.certificate.summary())
        return OK if dec.certificate.ok else FAILED
    return OK


def cmd_decompose(args) -> int:
    if args.dir:
        files = sorted(Path(args.dir).glob("*.rep"))
        if not files:
            raise fileformat.ReprFileError(f"no .rep files in {args.dir}")
        code = OK
        for f in files:
            _out(f"== {f.name}")
            try:
                code = max(code, _decompose_one(f, args.seed, args.zero_vertex, args.verify))
            except QuiverError as e:
                _out(f"error: {e}")
                code = max(code, BAD_INPUT)
        return code
    if not args.file:
        raise fileformat.ReprFileError("decompose needs a file or --dir")
    return _decompose_one(args.file, args.seed, args.zero_vertex, args.verify)


def cmd_classify(args) -> int:
    r = fileformat.parse(args.file)
    _out(str(classify(r.shape)))
    a = analyze(r.shape)
    _out(f"tree={a.is_tree} connected={a.is_connected} finitely_branching={a.is_finitely_branching} eventually_outward={a.is_eventually_outward}")
    return OK


def cmd_tails(args) -> int:
    r = fileformat.parse(args.file)
    code = OK
    for tc in find_tails(r.shape):
        rep = check_tail(r, tc)
        chain = " - ".join(str(v) for v in tc.chain)
        _out(f"tail {tc.index} ({chain} - ...): {'ok' if rep.ok else f'{len(rep.violations)} violation(s)'}")
        for viol in rep.violations:
            _out(f"  arrow {viol.arrow[0]}->{viol.arrow[1]}: {viol.reason}")
            if viol.witness is not None:
                U, W = viol.witness
                du = {v: s.dim for v, s in U.items() if s.dim}
                dw = {v: s.dim for v, s in W.items() if s.dim}
                _out(f"  splitting witness: U dims {du}, W dims {dw}")
    fr = is_flei(r)
    arrows = ", ".join(f"{a}" for a in fr.non_iso_arrows)
    _out(f"FLEI: {fr.flei} (non-isomorphisms: {arrows or 'none'})")
    try:
        fc = flei_theorem_check(r)
    except CoreTooLarge as e:
        _out(f"tail theorem check skipped: {e}")
        return code
    _out(f"tail theorem check: {fc.detail}")
    if not fc.indecomposable_candidates_flei:
        code = FAILED
    return code


def cmd_roots(args) -> int:
    q = named_shape(args.shape)
    window = QuiverShape(q.vertices, q.arrows)
    roots = positive_roots(window, args.bound)
    _out(f"# {len(roots)} positive roots of {args.shape} with entries <= {args.bound}; order {list(q.vertices)}")
    for d in roots:
        _out("(" + ",".join(map(str, d)) + ")")
    return OK


def _print_rep(r, label):
    _out(f"{label}:")
    for v in r.shape.vertices:
        if r.dims[v]:
            _out(f"  V({v}) dim {r.dims[v]}")
    for a, m in r.maps.items():
        if m.rows and m.cols:
            _out(f"  {a[0]}->{a[1]} {_fmt_matrix(m)}")


def cmd_witness(args) -> int:
    fs = FieldSpec.parse(args.field)
    try:
        w = non_dynkin_witness(args.shape, fs, seed=args.seed)
    except NoWitnessFound as e:
        _out(f"no witness: {e}")
        return BAD_INPUT if classify(named_shape(args.shape)).is_dynkin else FAILED
    _out(f"obstruction: {w.obstruction} on {', '.join(map(str, w.support))}")
    _print_rep(w.rep1, "W1")
    _print_rep(w.rep2, "W2")
    for name, ok in w.certificates.items():
        _out(f"{'ok  ' if ok else 'FAIL'} {name}")
    return OK if w.ok else FAILED


def _fixture(name: str):
    return resources.files("lfquiver").joinpath("fixtures", name)


def selftest_checks():
    """``(name, passed)`` pairs over the bundled fixtures."""
    out = []
    with resources.as_file(_fixture("a3.rep")) as p:
        r = fileformat.parse(p)
    dec = decompose(r)
    out.append(("A3 barcode [1,2] + [3,3]", dec.barcode.lines() == ["[1,2] x 1", "[3,3] x 1"] and dec.certificate.ok))
    out.append(("A3 matches the rank oracle", rank_oracle(r) == dec.barcode))
    with resources.as_file(_fixture("vprime.rep")) as p:
        r = fileformat.parse(p)
    dec = decompose(r)
    out.append(("V' barcode [-inf,0] + [-inf,1]", dec.barcode.lines() == ["[-inf,0] x 1", "[-inf,1] x 1"] and dec.certificate.ok))
    out.append(("V' non-isomorphisms are a_0, a_1", len(is_flei(r).non_iso_arrows) == 2))
    with resources.as_file(_fixture("dinfty.rep")) as p:
        r = fileformat.parse(p)
    out.append(("D-infinity classified", str(classify(r.shape)) == "DInfinity"))
    out.append(("D-infinity tail theorems", flei_theorem_check(r).indecomposable_candidates_flei))
    with resources.as_file(_fixture("tail_not_surjective.rep")) as p:
        r = fileformat.parse(p)
    rep = check_tail(r)
    out.append(("non-surjective tail arrow flagged", not rep.ok and rep.violations[0].witness is not None))
    with resources.as_file(_fixture("zigzag_q.rep")) as p:
        dec = decompose(fileformat.parse(p))
    out.append(("rational zigzag verified", dec.certificate.ok))
    f = nonspanning_example()
    cells = chain_gradation(f)
    out.append((
        "nonspanning filtration",
        all(c.dim == 0 for c in cells.values()) and not chain_spans(f, cells) and not chain_closed_under_intersection(f),
    ))
    out.append(("A3 has 6 positive roots", len(positive_roots(named_shape("A3"), 3)) == 6))
    out.append(("D4 has 12 positive roots", len(positive_roots(named_shape("D4"), 3)) == 12))
    out.append(("triangle witness certified", non_dynkin_witness("C3", FieldSpec.gf(5)).ok))
    out.append(("extended D4 witness over GF(2)", non_dynkin_witness("Dt4", FieldSpec.gf(2)).ok))
    return out


def cmd_selftest(args) -> int:
    checks = selftest_checks()
    for name, ok in checks:
        _out(f"{'PASS' if ok else 'FAIL'} {name}")
    failed = sum(1 for _, ok in checks if not ok)
    _out(f"{len(checks) - failed}/{len(checks)} checks passed")
    return FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lfquiver", description="Interval decompositions and root checks for quivers with tails.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decompose", help="print the barcode of an A-type representation")
    p.add_argument("file", nargs="?")
    p.add_argument("--seed", type=int, default=None, help="complement seed (defaults to the file's seed)")
    p.add_argument("--zero-vertex", type=int, default=0, help="window position where propagation starts")
    p.add_argument("--verify", action="store_true", help="recheck the decomposition and print the certificate")
    p.add_argument("--dir", help="decompose every .rep file in a directory")
    p.set_defaults(func=cmd_decompose)
    p = sub.add_parser("classify", help="print the shape class and structural flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("tails", help="tail arrow checks and FLEI report")
    p.add_argument("file")
    p.set_defaults(func=cmd_tails)
    p = sub.add_parser("roots", help="positive roots of a named shape")
    p.add_argument("shape")
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(func=cmd_roots)
    p = sub.add_parser("witness", help="two non-isomorphic indecomposables sharing a dimension vector")
    p.add_argument("shape")
    p.add_argument("--field", default="GF(5)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_witness)
    p = sub.add_parser("selftest", help="run the bundled fixture checks")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QuiverError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
