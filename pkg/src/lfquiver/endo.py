"""Homomorphisms, endomorphism algebras and indecomposability certificates.

Stable rays carry identities, so a morphism is determined by its components
on the finite part; only the arrow joining a ray to its attach vertex adds
constraints when the two representations extend a tail differently.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass


from .errors import CoreTooLarge
from .exactalg import FieldSpec, Matrix, Subspace, kernel
from .repn import STABLE, ZERO, Representation, restrict

# ---------------------------------------------------------------------------
# morphism spaces


def _layout(v: Representation, w: Representation):
    offs, pos = {}, 0
    for x in v.shape.vertices:
        offs[x] = pos
        pos += w.dims[x] * v.dims[x]
    return offs, pos


def hom_basis(v: Representation, w: Representation) -> list:
    """Basis of ``Hom(v, w)``; each element is a dict vertex -> Matrix."""
    fs = v.field
    offs, nvars = _layout(v, w)
    if nvars == 0:
        return []
    rows = []

    def var(x, i, j):
        # entry (i, j) of the component at x, row-major
        return offs[x] + i * v.dims[x] + j

    for (src, dst) in v.shape.arrows:
        va, wa = v.maps[(src, dst)], w.maps[(src, dst)]
        # w_a phi_src - phi_dst v_a = 0, entry by entry
        for i in range(w.dims[dst]):
            for j in range(v.dims[src]):
                row = [fs.zero] * nvars
                for k in range(w.dims[src]):
                    c = wa[i, k]
                    if c:
                        idx = var(src, k, j)
                        row[idx] = fs.add(row[idx], c)
                for k in range(v.dims[dst]):
                    c = va[k, j]
                    if c:
                        idx = var(dst, i, k)
                        row[idx] = fs.add(row[idx], fs.neg(c))
                if any(row):
                    rows.append(row)
    for ti, t in enumerate(v.shape.tails):
        ev, ew = v.tail_ext[ti], w.tail_ext[ti]
        kill = (ev == STABLE and ew == ZERO and not t.outward) or (ev == ZERO and ew == STABLE and t.outward)
        if kill:
            x = t.attach
            for i in range(w.dims[x]):
                for j in range(v.dims[x]):
                    row = [fs.zero] * nvars
                    row[var(x, i, j)] = fs.one
                    rows.append(row)
    sol = kernel(Matrix(fs, len(rows), nvars, tuple(tuple(r) for r in rows))) if rows else Subspace.full(fs, nvars)
    out = []
    for b in sol.basis:
        comp = {}
        for x in v.shape.vertices:
            r, c = w.dims[x], v.dims[x]
            o = offs[x]
            comp[x] = Matrix(fs, r, c, tuple(tuple(b[o + i * c + j] for j in range(c)) for i in range(r)))
        out.append(comp)
    return out


def end_basis(v: Representation) -> list:
    return hom_basis(v, v)


def combine(fs: FieldSpec, basis: list, coeffs) -> dict:
    out = {}
    for x in basis[0]:
        m = basis[0][x]
        acc = [[fs.zero] * m.cols for _ in range(m.rows)]
        for c, b in zip(coeffs, basis):
            if c:
                bx = b[x]
                for i in range(m.rows):
                    row = acc[i]
                    brow = bx.data[i]
                    for j in range(m.cols):
                        if brow[j]:
                            row[j] = fs.add(row[j], fs.mul(c, brow[j]))
        out[x] = Matrix(fs, m.rows, m.cols, tuple(tuple(r) for r in acc))
    return out


def compose(f: dict, g: dict) -> dict:
    """``f o g`` componentwise."""
    return {x: f[x] @ g[x] for x in f}


def _power(m: Matrix, k: int) -> Matrix:
    out = Matrix.identity(m.field, m.rows)
    base = m
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def is_nilpotent(phi: dict) -> bool:
    return all(_power(m, m.rows).is_zero() for m in phi.values() if m.rows)


def is_invertible(phi: dict) -> bool:
    return all(m.is_isomorphism() for m in phi.values())


def identity_morphism(v: Representation) -> dict:
    return {x: Matrix.identity(v.field, v.dims[x]) for x in v.shape.vertices}


def is_isomorphism_morphism(phi: dict) -> bool:
    return is_invertible(phi)


# ---------------------------------------------------------------------------
# splitting


@dataclass
class Piece:
    """A summand with the subspaces of the original spaces it occupies."""

    rep: Representation
    spaces: dict
    certified: bool = False
    how: str = ""


def fitting_split(v: Representation, phi: dict):
    """``V = ker phi^N (+) im phi^N`` as two families of subspaces."""
    fs = v.field
    k_sp, i_sp = {}, {}
    for x in v.shape.vertices:
        m = phi[x]
        p = _power(m, max(m.rows, 1))
        k_sp[x] = kernel(p)
        i_sp[x] = Subspace._trusted(fs, m.rows, [list(r) for r in p.transpose().data])
    return k_sp, i_sp


def _single_eigenvalue(m: Matrix):
    """The unique eigenvalue ``c`` with ``m - c`` nilpotent, or ``None``."""
    fs = m.field
    d = m.rows
    cands = []
    tr = sum(m[i, i] for i in range(d))
    if fs.p is None:
        cands = [tr / d]
    elif d % fs.p:
        cands = [fs.mul(tr % fs.p, fs.inv(d % fs.p))]
    elif fs.p <= 1024:
        cands = list(fs.elements())
    for c in cands:
        shifted = Matrix(fs, d, d, tuple(tuple(fs.add(m[i, j], fs.neg(c)) if i == j else m[i, j] for j in range(d)) for i in range(d)))
        if _power(shifted, d).is_zero():
            return c
    return None


def _span_key(fs, mats: list, vertices, v):
    vecs = []
    for phi in mats:
        vec = []
        for x in vertices:
            for row in phi[x].data:
                vec.extend(row)
        vecs.append(vec)
    return vecs


def local_certificate(v: Representation, basis: list | None = None):
    """True if ``End(v) = F.1 (+) J`` with ``J`` a nilpotent subalgebra, else ``None``.

    Such an algebra is local, so ``v`` is indecomposable.
    """
    fs = v.field
    basis = end_basis(v) if basis is None else basis
    verts = [x for x in v.shape.vertices if v.dims[x] > 0]
    if not verts:
        return None
    if len(basis) == 1:
        return True
    shifted = []
    for b in basis:
        c = _single_eigenvalue(b[verts[0]])
        if c is None:
            return None
        nb = {}
        for x in v.shape.vertices:
            m = b[x]
            nb[x] = Matrix(fs, m.rows, m.cols, tuple(tuple(fs.add(m[i, j], fs.neg(c)) if i == j else m[i, j] for j in range(m.cols)) for i in range(m.rows)))
        shifted.append(nb)
    total = sum(v.dims[x] ** 2 for x in v.shape.vertices)
    jvecs = _span_key(fs, shifted, v.shape.vertices, v)
    J = Subspace._trusted(fs, total, jvecs) if jvecs else Subspace.zero(fs, total)
    idvec = _span_key(fs, [identity_morphism(v)], v.shape.vertices, v)[0]
    if J.dim != len(basis) - 1 or idvec in J:
        return None
    # J closed under products and nilpotent: J^k shrinks to zero
    jgen = [m for m, vec in zip(shifted, jvecs) if any(vec)]
    power = jgen
    seen = J.dim + 1
    for _ in range(total + 1):
        prods = [compose(a, b) for a in power for b in jgen]
        pvecs = _span_key(fs, prods, v.shape.vertices, v)
        P = Subspace._trusted(fs, total, pvecs) if pvecs else Subspace.zero(fs, total)
        if not all(vec in J for vec in pvecs if any(vec)):
            return None
        if P.is_zero():
            return True
        if P.dim >= seen:
            return None
        seen = P.dim
        # rebuild generators of the next power from P's basis
        power = []
        for row in P.basis:
            comp, pos = {}, 0
            for x in v.shape.vertices:
                d = v.dims[x]
                comp[x] = Matrix(fs, d, d, tuple(tuple(row[pos + i * d + j] for j in range(d)) for i in range(d)))
                pos += d * d
            power.append(comp)
    return None


def _batched_local_check(v: Representation, basis: list, limit: int):
    """Exhaustive scan of End over GF(p): returns (True, None), (False, phi) or None if too large."""
    fs = v.field
    if fs.p is None:
        return None
    k = len(basis)
    if fs.p ** k > limit:
        return None
    p = fs.p
    for coeffs in itertools.product(range(p), repeat=k):
        if not any(coeffs):
            continue
        phi = combine(fs, basis, coeffs)
        if not is_nilpotent(phi) and not is_invertible(phi):
            return False, phi
    return True, None


def _eigenvalue_candidates(m: Matrix) -> list:
    """Field elements ``c`` making ``m - c`` singular (diagonal entries over Q)."""
    fs = m.field
    if not m.rows:
        return []
    if fs.p is None:
        return sorted({m[i, i] for i in range(m.rows)} | {fs.zero})
    return [c for c in fs.elements() if not _shift(m, c).is_isomorphism()]


def _splits(phi: dict) -> bool:
    return not is_nilpotent(phi) and not is_invertible(phi)


def find_splitting(v: Representation, basis: list, rng: random.Random, tries: int = 48):
    """Some endomorphism that is neither nilpotent nor invertible, or ``None``.

    Each candidate is tried after subtracting each of its eigenvalues, which
    exposes splittings hidden behind an invertible part.
    """
    fs = v.field
    verts = [x for x in v.shape.vertices if v.dims[x] > 0]

    def attempt(phi):
        if _splits(phi):
            return phi
        cs = set()
        for x in verts:
            cs.update(_eigenvalue_candidates(phi[x]))
        for c in sorted(cs):
            sh = {x: _shift(phi[x], c) for x in phi}
            if _splits(sh):
                return sh
        return None

    for b in basis:
        hit = attempt(b)
        if hit is not None:
            return hit
    for _ in range(tries):
        phi = combine(fs, basis, [fs.random_element(rng) for _ in basis])
        hit = attempt(phi)
        if hit is not None:
            return hit
    return None


def _shift(m: Matrix, c) -> Matrix:
    fs = m.field
    return Matrix(fs, m.rows, m.cols, tuple(tuple(fs.add(m[i, j], fs.neg(c)) if i == j else m[i, j] for j in range(m.cols)) for i in range(m.rows)))


@dataclass
class IndecomposabilityResult:
    indecomposable: bool | None
    method: str
    end_dim: int
    splitting: dict | None = None


def certify_indecomposable(v: Representation, rng: random.Random | None = None, exhaustive_limit: int = 1 << 14) -> IndecomposabilityResult:
    """Decide indecomposability with a proof, or report it undecided (``None``)."""
    rng = rng or random.Random(0)
    if v.is_zero():
        return IndecomposabilityResult(False, "zero", 0)
    basis = end_basis(v)
    if len(basis) == 1:
        return IndecomposabilityResult(True, "brick", 1)
    if local_certificate(v, basis):
        return IndecomposabilityResult(True, "local endomorphism ring", len(basis))
    split = find_splitting(v, basis, rng)
    if split is not None:
        return IndecomposabilityResult(False, "fitting", len(basis), split)
    scan = _batched_local_check(v, basis, exhaustive_limit)
    if scan is not None:
        ok, phi = scan
        return IndecomposabilityResult(ok, "exhaustive", len(basis), phi)
    return IndecomposabilityResult(None, "undecided", len(basis))


def split_completely(v: Representation, rng: random.Random | None = None, max_dim: int | None = None) -> list:
    """Break ``v`` into pieces by Fitting splits; each piece is certified or flagged."""
    rng = rng or random.Random(0)
    if max_dim is not None and v.total_dim() > max_dim:
        raise CoreTooLarge(f"core dimension {v.total_dim()} exceeds {max_dim}")
    fs = v.field
    whole = {x: Subspace.full(fs, v.dims[x]) for x in v.shape.vertices}
    return _split(v, whole, rng)


def _embed(v: Representation, spaces: dict, sub: dict, parent: dict) -> dict:
    """Subspaces of the piece ``spaces`` (in its RREF coordinates) pushed to the parent."""
    fs = v.field
    out = {}
    for x, s in sub.items():
        host = parent[x]
        vecs = []
        for b in s.basis:
            vec = [fs.zero] * host.ambient_dim
            for c, hb in zip(b, host.basis):
                if c:
                    vec = [fs.add(a, fs.mul(c, h)) for a, h in zip(vec, hb)]
            vecs.append(vec)
        out[x] = Subspace._trusted(fs, host.ambient_dim, vecs)
    return out


def _split(v: Representation, spaces: dict, rng) -> list:
    if v.is_zero():
        return []
    res = certify_indecomposable(v, rng)
    if res.indecomposable:
        return [Piece(v, spaces, True, res.method)]
    if res.indecomposable is None:
        return [Piece(v, spaces, False, res.method)]
    k_sp, i_sp = fitting_split(v, res.splitting)
    out = []
    for sub in (k_sp, i_sp):
        piece = restrict(v, sub)
        out += _split(piece, _embed(v, spaces, sub, spaces), rng)
    return out


# ---------------------------------------------------------------------------
# isomorphism


def hom_dim(v: Representation, w: Representation) -> int:
    return len(hom_basis(v, w))


def find_isomorphism(v: Representation, w: Representation, rng: random.Random | None = None, tries: int = 24):
    """An isomorphism ``v -> w`` found by random search, or ``None``."""
    if v.dimension_vector() != w.dimension_vector():
        return None
    basis = hom_basis(v, w)
    if not basis:
        return None if v.total_dim() else {}
    fs = v.field
    rng = rng or random.Random(0)
    for b in basis:
        if is_invertible(b):
            return b
    for _ in range(tries):
        phi = combine(fs, basis, [fs.random_element(rng) for _ in basis])
        if is_invertible(phi):
            return phi
    return None


def isomorphic_exhaustive(v: Representation, w: Representation, limit: int = 1 << 16):
    """Scan all of ``Hom(v, w)`` over a prime field; ``None`` if too large."""
    if v.dimension_vector() != w.dimension_vector():
        return False
    fs = v.field
    basis = hom_basis(v, w)
    if not basis:
        return v.total_dim() == 0
    if fs.p is None or fs.p ** len(basis) > limit:
        return None
    for coeffs in itertools.product(range(fs.p), repeat=len(basis)):
        if any(coeffs) and is_invertible(combine(fs, basis, coeffs)):
            return True
    return False
