"""Euler-Tits form, positive roots and unique representation type.

Roots are enumerated by bounded brute force; the bijection checks build one
indecomposable per root (interval indicators on A-types, generic bricks on D
and E types) and sample random representations to confirm that every
indecomposable summand met is a root and matches the one built for its
dimension vector.  Non-Dynkin shapes get an explicit pair of non-isomorphic
indecomposables sharing a dimension vector.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from .decompose import decompose
from .endo import certify_indecomposable, find_isomorphism, hom_dim, isomorphic_exhaustive, split_completely
from .errors import InfiniteSupport, InvalidShape, NoWitnessFound
from .exactalg import FieldSpec, Matrix
from .generate import random_matrix, random_representation
from .quiver import QuiverShape, TailDecl, classify, path_order
from .repn import STABLE, ZERO, Representation
from .shapes import named_shape

# largest root entry per finite Dynkin family
KNOWN_MAX_ENTRY = {"A": 1, "D": 2, 6: 3, 7: 4, 8: 6}


# ---------------------------------------------------------------------------
# the form


@dataclass(frozen=True)
class TitsForm:
    shape: QuiverShape

    def __call__(self, d) -> int:
        return tits(self.shape, d)

    def gram(self) -> list:
        """Symmetric matrix ``G`` with ``q(d) = d G d / 2`` (entries are integers)."""
        vs = list(self.shape.vertices)
        pos = {v: i for i, v in enumerate(vs)}
        g = [[2 if i == j else 0 for j in range(len(vs))] for i in range(len(vs))]
        for s, t in self.shape.arrows:
            g[pos[s]][pos[t]] -= 1
            g[pos[t]][pos[s]] -= 1
        return g


def _as_dict(shape: QuiverShape, d) -> dict:
    if isinstance(d, dict):
        unknown = set(d) - set(shape.vertices)
        if unknown:
            raise InvalidShape(f"unknown vertices {sorted(map(str, unknown))}")
        return {v: int(d.get(v, 0)) for v in shape.vertices}
    d = list(d)
    if len(d) != len(shape.vertices):
        raise InvalidShape(f"expected {len(shape.vertices)} entries, got {len(d)}")
    return {v: int(x) for v, x in zip(shape.vertices, d)}


def tits(shape: QuiverShape, d, tail_values=()) -> int:
    """``q(d) = sum d_x^2 - sum_{x->y} d_x d_y`` for a finitely supported ``d``.

    ``tail_values`` are the eventual values on the tails; any nonzero one
    means infinite support.
    """
    if any(tail_values):
        raise InfiniteSupport("the form is defined for finitely supported vectors")
    dd = _as_dict(shape, d)
    return sum(x * x for x in dd.values()) - sum(dd[s] * dd[t] for s, t in shape.arrows)


def _edges_idx(shape: QuiverShape):
    pos = {v: i for i, v in enumerate(shape.vertices)}
    return [(pos[s], pos[t]) for s, t in shape.arrows]


def _connected_masks(n: int, edges) -> np.ndarray:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    ok = np.zeros(1 << n, dtype=bool)
    for mask in range(1, 1 << n):
        nodes = [i for i in range(n) if mask >> i & 1]
        ok[mask] = nx.is_connected(g.subgraph(nodes))
    return ok


def _scan(shape: QuiverShape, bound: int, chunk: int = 1 << 20):
    """Yield ``(vectors, q, support_mask)`` for every vector in ``[0, bound]^n``."""
    n = len(shape.vertices)
    edges = _edges_idx(shape)
    base = bound + 1
    total = base ** n
    weights = base ** np.arange(n, dtype=np.int64)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        vec = (idx[:, None] // weights[None, :]) % base
        q = (vec * vec).sum(axis=1)
        for s, t in edges:
            q -= vec[:, s] * vec[:, t]
        mask = ((vec > 0) * (1 << np.arange(n, dtype=np.int64))).sum(axis=1)
        yield vec, q, mask


def positive_roots(shape: QuiverShape, bound: int, limit: int = 1 << 26) -> list:
    """All ``d`` with ``0 <= d_x <= bound``, connected support and ``q(d) = 1`` (sorted tuples)."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = len(shape.vertices)
    if (bound + 1) ** n > limit:
        raise ValueError(f"{(bound + 1) ** n} candidates exceed the enumeration limit {limit}")
    conn = _connected_masks(n, _edges_idx(shape))
    out = []
    for vec, q, mask in _scan(shape, bound):
        keep = (q == 1) & conn[mask]
        out.extend(tuple(int(x) for x in row) for row in vec[keep])
    return sorted(out)


def is_saturated(shape: QuiverShape, bound: int) -> bool:
    """Raising the bound by one adds no roots."""
    return positive_roots(shape, bound) == positive_roots(shape, bound + 1)


def _min_form_bruteforce(shape: QuiverShape, bound: int) -> int:
    best = None
    for b in range(1, bound + 1):
        for vec, q, mask in _scan(shape, b):
            q = q[mask > 0]
            if q.size:
                m = int(q.min())
                best = m if best is None else min(best, m)
        if best is not None and best <= 0:
            break
    return best


def _sylvester(shape: QuiverShape) -> bool:
    g = [[Fraction(x) for x in row] for row in TitsForm(shape).gram()]
    n = len(g)
    # leading minors are positive iff every pivot of plain elimination is positive
    for k in range(n):
        if g[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = g[i][k] / g[k][k]
            if f:
                for j in range(k, n):
                    g[i][j] -= f * g[k][j]
    return True


def is_positive_definite(shape: QuiverShape, method: str = "sylvester", bound: int | None = None) -> bool:
    """Positive definiteness of the form on the finite part of ``shape``.

    ``"bruteforce"`` minimizes over nonnegative vectors with entries up to
    ``bound``.  That is enough: ``q(|d|) <= q(d)`` because every cross term
    is negative, and a graph that is not Dynkin contains a Euclidean
    subgraph whose null root (entries at most 4 on at most 8 vertices, at
    most 6 in general) already has ``q <= 0``.
    """
    if method == "sylvester":
        return _sylvester(shape)
    if method != "bruteforce":
        raise ValueError(f"unknown method {method!r}")
    if bound is None:
        bound = 4 if len(shape.vertices) <= 8 else 6
    return _min_form_bruteforce(shape, bound) >= 1


# ---------------------------------------------------------------------------
# bijection checks


@dataclass
class BijectionReport:
    shape: str
    kind: str
    indecomposables: dict = field(default_factory=dict)
    roots: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    sampled_pieces: int = 0

    @property
    def distinct(self) -> bool:
        vecs = list(self.indecomposables.values())
        return len(vecs) == len(set(vecs))

    @property
    def ok(self) -> bool:
        return not self.failures and self.distinct

    def summary(self) -> str:
        return (
            f"{self.shape}: {len(self.indecomposables)} indecomposables, {len(self.roots)} roots, "
            f"{self.sampled_pieces} sampled pieces, {len(self.failures)} failures"
        )


def _vec(r: Representation) -> tuple:
    return tuple(r.dims[v] for v in r.shape.vertices)


def _indicator(shape: QuiverShape, fs: FieldSpec, support, tail_ext=()) -> Representation:
    dims = {v: 1 if v in support else 0 for v in shape.vertices}
    maps = {a: Matrix.identity(fs, 1) for a in shape.arrows if a[0] in support and a[1] in support}
    return Representation.build(shape, fs, dims, maps, tail_ext)


def _check_a_type(shape, name, fs, rng, trials, kind) -> BijectionReport:
    order = path_order(shape)
    n = len(order)
    rep = BijectionReport(name, kind)
    window = QuiverShape(shape.vertices, shape.arrows)
    root_set = positive_roots(window, 1)
    rep.roots = root_set
    ext_choices = list(itertools.product((ZERO, STABLE), repeat=len(shape.tails)))
    for ext in ext_choices:
        for s in range(n):
            for t in range(s, n):
                r = _indicator(shape, fs, set(order[s : t + 1]), ext)
                dec = decompose(r)
                items = list(dec.barcode.items())
                if not dec.certificate.ok or len(items) != 1 or items[0][1] != 1:
                    rep.failures.append(f"indicator {order[s]}..{order[t]} {ext}: barcode {dec.barcode.lines()}")
                    continue
                interval = items[0][0]
                eventual = tuple(r.dims[tl.attach] if e == STABLE else 0 for tl, e in zip(shape.tails, r.tail_ext))
                key = (_vec(r), eventual)
                if interval in rep.indecomposables and rep.indecomposables[interval] != key:
                    rep.failures.append(f"interval {interval} realized with two dimension vectors")
                rep.indecomposables[interval] = key
                if key[0] not in root_set:
                    rep.failures.append(f"{key[0]} is not a root of the window")
    finite = sorted(v for v, e in rep.indecomposables.values() if not any(e))
    if finite != root_set:
        rep.failures.append(f"finite-support indecomposables {len(finite)} != roots {len(root_set)}")
    for _ in range(trials):
        ext = rng.choice(ext_choices) if ext_choices else ()
        r = random_representation(rng, shape, fs, max_dim=3, tail_ext=ext)
        dec = decompose(r)
        for sm in dec.summands:
            rep.sampled_pieces += sm.multiplicity
            vec = tuple(1 if l in sm.spaces else 0 for l in range(n))
            d = tuple(vec[order.index(v)] for v in shape.vertices)
            if d not in root_set:
                rep.failures.append(f"sampled summand {d} is not a root")
    return rep


def generic_brick(shape: QuiverShape, fs: FieldSpec, d, rng: random.Random, tail_ext=(), tries: int = 40):
    """A random representation of dimension ``d`` whose endomorphisms are scalars."""
    dims = _as_dict(shape, d)
    for _ in range(tries):
        maps = {(s, t): random_matrix(fs, dims[t], dims[s], rng) for s, t in shape.arrows}
        r = Representation.build(shape, fs, dims, maps, tail_ext)
        if hom_dim(r, r) == 1:
            return r
    return None


def _normalize_ext(shape, dims, ext):
    return tuple(e if dims[t.attach] else ZERO for t, e in zip(shape.tails, ext))


def _check_by_bricks(shape, name, fs, rng, trials, kind, max_dim) -> BijectionReport:
    rep = BijectionReport(name, kind)
    window = QuiverShape(shape.vertices, shape.arrows)
    bound = 6 if kind == "E" else 2
    root_set = positive_roots(window, bound)
    rep.roots = root_set
    ext_choices = list(itertools.product((ZERO, STABLE), repeat=len(shape.tails)))
    bricks = {}
    for d in root_set:
        dims = _as_dict(shape, d)
        for ext in ext_choices or [()]:
            ext = _normalize_ext(shape, dims, ext)
            key = (d, ext)
            if key in bricks:
                continue
            b = generic_brick(shape, fs, d, rng, ext)
            if b is None:
                rep.failures.append(f"no brick found for {d} {ext}")
                continue
            bricks[key] = b
            eventual = tuple(dims[t.attach] if e == STABLE else 0 for t, e in zip(shape.tails, ext))
            rep.indecomposables[key] = (d, eventual)
    for _ in range(trials):
        ext = rng.choice(ext_choices) if ext_choices else ()
        r = random_representation(rng, shape, fs, max_dim=max_dim, tail_ext=ext)
        for piece in split_completely(r, rng):
            rep.sampled_pieces += 1
            if not piece.certified:
                continue
            d = _vec(piece.rep)
            if d not in root_set:
                rep.failures.append(f"sampled indecomposable {d} is not a root")
                continue
            key = (d, _normalize_ext(shape, piece.rep.dims, piece.rep.tail_ext))
            ref = bricks.get(key)
            if ref is not None and find_isomorphism(piece.rep, ref, rng) is None:
                rep.failures.append(f"sampled indecomposable {d} is not isomorphic to the reference")
    finite = sorted({d for d, e in rep.indecomposables.values() if not any(e)})
    if finite != root_set:
        rep.failures.append(f"finite-support indecomposables {len(finite)} != roots {len(root_set)}")
    return rep


def roots_bijection_check(shape, bound: int | None = None, trials: int = 20, field: FieldSpec | None = None, seed: int = 0, max_dim: int = 2) -> BijectionReport:
    """Indecomposables versus positive roots on a generalized ADE shape.

    A-types use interval indicators and ``decompose``; D and E types use
    generic bricks over a large prime field.  Shapes with tails are treated
    as windows with every combination of zero and stable extensions; the
    finitely supported indecomposables must then match the window's roots.
    """
    name = shape if isinstance(shape, str) else "shape"
    q = named_shape(shape) if isinstance(shape, str) else shape
    cls = classify(q)
    if not cls.is_dynkin:
        raise InvalidShape(f"{cls} is not a generalized ADE shape")
    rng = random.Random(seed)
    if cls.family in ("A", "AInfinity", "AInfinityInfinity"):
        fs = field or FieldSpec.gf(5)
        rep = _check_a_type(q, name, fs, rng, trials, "A")
    else:
        fs = field or FieldSpec.gf(101)
        kind = "E" if cls.family == "E" else "D"
        rep = _check_by_bricks(q, name, fs, rng, trials, kind, max_dim)
    if bound is not None:
        window = QuiverShape(q.vertices, q.arrows)
        if positive_roots(window, bound) != rep.roots:
            rep.failures.append(f"roots up to bound {bound} differ from the saturated list")
    return rep


# ---------------------------------------------------------------------------
# non-Dynkin witnesses


@dataclass
class Witness:
    rep1: Representation
    rep2: Representation
    obstruction: str
    support: tuple
    certificates: dict

    @property
    def ok(self) -> bool:
        return all(self.certificates.values())


def materialize(shape: QuiverShape, depth: int = 6) -> QuiverShape:
    """Unroll the first ``depth`` vertices of each tail into the finite part."""
    verts = list(shape.vertices)
    arrows = list(shape.arrows)
    tails = []
    for i, t in enumerate(shape.tails):
        prev = t.attach
        for k in range(1, depth + 1):
            v = ("ray", i, k)
            verts.append(v)
            arrows.append((prev, v) if t.outward else (v, prev))
            prev = v
        tails.append(TailDecl(prev, t.direction))
    return QuiverShape(tuple(verts), tuple(arrows), tuple(tails))


def _shortest_cycle(g: nx.Graph):
    best = None
    for u, v in g.edges():
        h = g.copy()
        h.remove_edge(u, v)
        try:
            p = nx.shortest_path(h, u, v)
        except nx.NetworkXNoPath:
            continue
        if best is None or len(p) < len(best):
            best = p
    return best


def _legs(g: nx.Graph, b):
    out = []
    for u in g.neighbors(b):
        leg, prev, cur = [], b, u
        while True:
            leg.append(cur)
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
        out.append(leg)
    return sorted(out, key=len)


def find_obstruction(shape: QuiverShape):
    """``(kind, null root)`` of a Euclidean subgraph, the root given as a vertex dict."""
    q = materialize(shape) if shape.tails else shape
    g = q.graph()
    if not nx.is_connected(g):
        raise InvalidShape("witnesses need a connected shape")
    cyc = _shortest_cycle(g)
    if cyc is not None:
        return q, "cycle", {v: 1 for v in cyc}
    branch = [v for v in q.vertices if g.degree(v) >= 3]
    for v in branch:
        if g.degree(v) >= 4:
            return q, "star", {v: 2, **{u: 1 for u in list(g.neighbors(v))[:4]}}
    if len(branch) >= 2:
        pairs = sorted(((nx.shortest_path_length(g, a, b), a, b) for a, b in itertools.combinations(branch, 2)), key=lambda x: x[0])
        _, a, b = pairs[0]
        p = nx.shortest_path(g, a, b)
        d = {v: 2 for v in p}
        for end, nxt in ((a, p[1]), (b, p[-2])):
            for u in [w for w in g.neighbors(end) if w != nxt][:2]:
                d[u] = 1
        return q, "extended D", d
    if len(branch) == 1:
        b = branch[0]
        legs = _legs(g, b)
        lens = [len(l) for l in legs]
        # null roots of the extended E graphs, leg by leg, from the branch outward
        for need, centre, vals in (
            ((2, 2, 2), 3, ((2, 1), (2, 1), (2, 1))),
            ((1, 3, 3), 4, ((2,), (3, 2, 1), (3, 2, 1))),
            ((1, 2, 5), 6, ((3,), (4, 2), (5, 4, 3, 2, 1))),
        ):
            if all(x >= y for x, y in zip(lens, need)):
                d = {b: centre}
                for leg, vs in zip(legs, vals):
                    d.update(zip(leg, vs))
                return q, f"extended E{sum(need)}", d
    raise NoWitnessFound(f"{classify(shape)} has no covered obstruction")


def _cycle_pair(q: QuiverShape, fs: FieldSpec, cyc: list):
    if fs.p is not None and fs.p < 3:
        raise NoWitnessFound("cycle witnesses need a field with at least 3 elements")
    dims = {v: 1 if v in cyc else 0 for v in q.vertices}
    on = set(cyc)
    arrows = [a for a in q.arrows if a[0] in on and a[1] in on]
    m1 = {a: Matrix.identity(fs, 1) for a in arrows}
    m2 = dict(m1)
    m2[arrows[0]] = Matrix.from_rows(fs, [[2]])
    return Representation.build(q, fs, dims, m1), Representation.build(q, fs, dims, m2)


def _line_map(fs, line, into_centre: bool):
    u, v = line
    if into_centre:
        return Matrix.from_rows(fs, [[u], [v]])
    return Matrix.from_rows(fs, [[v, fs.neg(u)]])


def _star_pair(q: QuiverShape, fs: FieldSpec, d: dict):
    centre = next(v for v, x in d.items() if x == 2)
    leaves = [v for v, x in d.items() if x == 1]
    l1, l2, l3 = (1, 0), (0, 1), (1, 1)

    def build(lines):
        maps = {}
        for leaf, line in zip(leaves, lines):
            if (leaf, centre) in q.arrows:
                maps[(leaf, centre)] = _line_map(fs, line, True)
            else:
                maps[(centre, leaf)] = _line_map(fs, line, False)
        dims = {v: d.get(v, 0) for v in q.vertices}
        return Representation.build(q, fs, dims, maps)

    return build((l1, l1, l2, l3)), build((l1, l2, l1, l3))


def _random_pair(q: QuiverShape, fs: FieldSpec, d: dict, rng: random.Random, tries: int = 200):
    dims = {v: d.get(v, 0) for v in q.vertices}
    found = []
    for _ in range(tries):
        maps = {(s, t): random_matrix(fs, dims[t], dims[s], rng) for s, t in q.arrows if dims[s] and dims[t]}
        r = Representation.build(q, fs, dims, maps)
        if not certify_indecomposable(r, rng).indecomposable:
            continue
        for other in found:
            if hom_dim(other, r) == 0 or isomorphic_exhaustive(other, r) is False:
                return other, r
        found.append(r)
    raise NoWitnessFound("random search found no non-isomorphic pair")


def _scalar_search(r1: Representation, r2: Representation, support, limit: int = 1 << 16):
    """Exhaustive search for vertexwise scalars turning ``r1`` into ``r2`` (thin supports)."""
    fs = r1.field
    if fs.p is None or (fs.p - 1) ** len(support) > limit:
        return None
    units = range(1, fs.p)
    arrows = [a for a in r1.shape.arrows if a[0] in support and a[1] in support]
    for scal in itertools.product(units, repeat=len(support)):
        c = dict(zip(support, scal))
        if all(fs.mul(r2.maps[a][0, 0], c[a[0]]) == fs.mul(c[a[1]], r1.maps[a][0, 0]) for a in arrows):
            return True
    return False


def non_dynkin_witness(shape, field: FieldSpec | None = None, seed: int = 0) -> Witness:
    """Two non-isomorphic indecomposables with one dimension vector, extended by zero.

    Tails are unrolled a few steps first, so the representations live on a
    shape with the same underlying infinite quiver.
    """
    q0 = named_shape(shape) if isinstance(shape, str) else shape
    cls = classify(q0)
    if cls.is_dynkin:
        raise NoWitnessFound(f"{cls} is Dynkin: no two indecomposables share a dimension vector")
    fs = field or FieldSpec.gf(5)
    rng = random.Random(seed)
    q, kind, d = find_obstruction(q0)
    if kind == "cycle":
        cyc = list(d)
        r1, r2 = _cycle_pair(q, fs, cyc)
    elif kind == "star":
        r1, r2 = _star_pair(q, fs, d)
    else:
        r1, r2 = _random_pair(q, fs, d, rng)
    certs = {
        "same dimension vector": r1.dimension_vector() == r2.dimension_vector(),
        "first indecomposable": bool(certify_indecomposable(r1, rng).indecomposable),
        "second indecomposable": bool(certify_indecomposable(r2, rng).indecomposable),
    }
    iso = isomorphic_exhaustive(r1, r2)
    certs["non-isomorphic (Hom scan)"] = iso is False
    if kind == "cycle":
        certs["non-isomorphic (scalar search)"] = _scalar_search(r1, r2, list(d)) is not True
    return Witness(r1, r2, kind, tuple(v for v in q.vertices if d.get(v)), certs)
