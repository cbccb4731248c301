"""Tails of tree quivers: the doubled line, tail checks and the FLEI check.

Given a tail ``x_0, x_1, ...`` of a shape, the doubled representation is a
line whose right half copies the tail and whose left half repeats
``V(x_0)`` forever with identity arrows pointing away from ``y_0``.  Its
interval decomposition splits ``V`` itself whenever a tail arrow fails to be
surjective (pointing with the tail) or injective (pointing against it).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .decompose import decompose
from .endo import Piece, certify_indecomposable, fitting_split, _embed
from .errors import CoreTooLarge, NotATail
from .exactalg import Subspace, sum_all
from .line import LineRep
from .quiver import TailChain, find_tails
from .repn import STABLE, Representation, is_flei, restrict

INF = float("inf")


@dataclass
class DoubledRep:
    base: Representation
    tail: TailChain
    start: int
    doubled: LineRep

    @property
    def window(self) -> tuple:
        return self.tail.chain[self.start:]


def _resolve(r: Representation, tail) -> TailChain:
    chains = find_tails(r.shape)
    if isinstance(tail, TailChain):
        if tail not in chains:
            raise NotATail("not a tail of this shape")
        return tail
    if isinstance(tail, int) and 0 <= tail < len(chains):
        return chains[tail]
    raise NotATail(f"no tail {tail!r}")


def double(r: Representation, tail=0, start: int = 0) -> DoubledRep:
    """The doubled line for the subtail ``x_start, x_start+1, ...``."""
    tc = _resolve(r, tail)
    if not 0 <= start < len(tc.chain):
        raise NotATail(f"start {start} is outside the tail chain of length {len(tc.chain)}")
    window = tc.chain[start:]
    dims = tuple(r.dims[v] for v in window)
    maps, fwd = [], []
    for u, v in zip(window, window[1:]):
        if (u, v) in r.maps:
            maps.append(r.maps[(u, v)])
            fwd.append(True)
        else:
            maps.append(r.maps[(v, u)])
            fwd.append(False)
    line = LineRep(
        r.field,
        dims,
        tuple(maps),
        tuple(fwd),
        left_ext=STABLE,
        left_forward=False,
        right_ext=r.tail_ext[tc.index],
        right_forward=tc.decl.outward,
        labels=window,
    )
    return DoubledRep(r, tc, start, line)


@dataclass
class TailViolation:
    position: int
    arrow: tuple
    reason: str
    witness: tuple | None = None


@dataclass
class TailReport:
    tail: TailChain
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _chain_arrow(r: Representation, u, v):
    if (u, v) in r.maps:
        return (u, v), r.maps[(u, v)], True
    return (v, u), r.maps[(v, u)], False


def splitting_witness(r: Representation, tail=0, start: int = 0):
    """``(U, W)`` subspace families with ``V = U (+) W`` from the doubled line.

    ``U`` collects the summands starting at ``y_1`` or later; ``W`` is all of
    ``V`` away from ``x_start+1, ...`` together with the summands unbounded
    to the left.
    """
    d = double(r, tail, start)
    dec = decompose(d.doubled, check=False)
    fs = r.field
    window = d.window
    U = {v: Subspace.zero(fs, r.dims[v]) for v in r.shape.vertices}
    W = {v: Subspace.full(fs, r.dims[v]) for v in r.shape.vertices}
    for pos, v in enumerate(window):
        if pos == 0:
            continue
        u_parts = [sm.spaces[pos] for sm in dec.summands if pos in sm.spaces and sm.s >= 1]
        w_parts = [sm.spaces[pos] for sm in dec.summands if pos in sm.spaces and sm.s == -INF]
        U[v] = sum_all(u_parts, fs, r.dims[v])
        W[v] = sum_all(w_parts, fs, r.dims[v])
    return U, W


def check_tail(r: Representation, tail=0, witnesses: bool = True) -> TailReport:
    """Flag tail arrows that are not surjective with the tail or not injective against it."""
    tc = _resolve(r, tail)
    report = TailReport(tc)
    chain = tc.chain
    for k, (u, v) in enumerate(zip(chain, chain[1:])):
        arrow, m, with_tail = _chain_arrow(r, u, v)
        reasons = []
        if with_tail and not m.is_surjective():
            reasons.append("not surjective along the tail")
        if not with_tail and not m.is_injective():
            reasons.append("not injective against the tail")
        if r.dims[v] > r.dims[u]:
            reasons.append("dimension increases along the tail")
        if reasons:
            wit = splitting_witness(r, tc, k) if witnesses else None
            report.violations.append(TailViolation(k, arrow, "; ".join(reasons), wit))
    return report


def _nonzero_tail_report(r: Representation, tc: TailChain) -> list:
    """Violations on the part of the chain from its first nonzero vertex on."""
    chain = tc.chain
    first = next((k for k, v in enumerate(chain) if r.dims[v]), None)
    if first is None:
        return []
    out = []
    for k in range(first, len(chain) - 1):
        u, v = chain[k], chain[k + 1]
        arrow, m, with_tail = _chain_arrow(r, u, v)
        if r.dims[v] > r.dims[u]:
            out.append(("dimension increase", arrow))
        if with_tail and not m.is_surjective():
            out.append(("not surjective", arrow))
        if not with_tail and not m.is_injective():
            out.append(("not injective", arrow))
    return out


@dataclass
class FleiCheck:
    indecomposable_candidates_flei: bool
    certified: list
    uncertified: list
    violations: list
    detail: str = ""


def _split_by_tails(v: Representation, spaces: dict):
    for tc in find_tails(v.shape):
        chain = tc.chain
        for k in range(len(chain) - 1):
            rep = check_tail(v, tc, witnesses=False)
            if rep.ok:
                break
            for viol in rep.violations:
                U, W = splitting_witness(v, tc, viol.position)
                if any(s.dim for s in U.values()) and any(s.dim for s in W.values()):
                    return U, W
            break
    return None


def split_with_tails(v: Representation, rng=None, spaces=None) -> list:
    """Pieces of ``v``: tail witnesses first, then Fitting splits of endomorphisms."""
    rng = rng or random.Random(0)
    fs = v.field
    spaces = spaces or {x: Subspace.full(fs, v.dims[x]) for x in v.shape.vertices}
    if v.is_zero():
        return []
    tw = _split_by_tails(v, spaces)
    if tw is not None:
        out = []
        for sub in tw:
            out += split_with_tails(restrict(v, sub), rng, _embed(v, spaces, sub, spaces))
        return out
    res = certify_indecomposable(v, rng)
    if res.indecomposable:
        return [Piece(v, spaces, True, res.method)]
    if res.indecomposable is None:
        return [Piece(v, spaces, False, res.method)]
    out = []
    for sub in fitting_split(v, res.splitting):
        out += split_with_tails(restrict(v, sub), rng, _embed(v, spaces, sub, spaces))
    return out


def flei_theorem_check(r: Representation, max_core: int = 12, rng=None) -> FleiCheck:
    """Split ``r`` into indecomposables and test each certified one against the tail theorems."""
    if r.total_dim() > max_core:
        raise CoreTooLarge(f"core dimension {r.total_dim()} exceeds {max_core}")
    pieces = split_with_tails(r, rng)
    certified = [p for p in pieces if p.certified]
    uncertified = [p for p in pieces if not p.certified]
    violations = []
    for i, p in enumerate(certified):
        for tc in find_tails(p.rep.shape):
            for kind, arrow in _nonzero_tail_report(p.rep, tc):
                violations.append((i, kind, arrow))
        if not is_flei(p.rep).flei:
            violations.append((i, "not FLEI", None))
    detail = f"{len(certified)} certified, {len(uncertified)} undecided, {len(violations)} violations"
    return FleiCheck(not violations, certified, uncertified, violations, detail)
