"""Interval decomposition of line representations.

Cells of the propagated almost gradations are grouped by the interval they
belong to; each group is an isotypic interval summand.  ``verify`` rechecks
the resulting decomposition from scratch and ``rank_oracle`` recomputes the
barcode of an equioriented window by inclusion-exclusion of ranks.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import InconsistentAddress, NotEquioriented
from .exactalg import Matrix, Subspace, image, rank_of_vectors, sum_all
from .filtration import Index, propagate_all
from .line import LineRep, as_line
from .repn import STABLE, ZERO

INF = float("inf")


def _fmt(x) -> str:
    if x == -INF:
        return "-inf"
    if x == INF:
        return "+inf"
    return str(int(x))


class Barcode(Counter):
    """Multiset of intervals ``(s, t)``; infinite ends are ``-inf`` / ``inf`` floats."""

    def intervals(self) -> list:
        return sorted(self.elements())

    def lines(self) -> list:
        return [f"[{_fmt(s)},{_fmt(t)}] x {m}" for (s, t), m in sorted(self.items()) if m]

    def __str__(self):
        return "\n".join(self.lines())

    def reflected(self) -> "Barcode":
        return Barcode({(-t, -s): m for (s, t), m in self.items()})

    def dims_at(self, x) -> int:
        return sum(m for (s, t), m in self.items() if s <= x <= t)


def format_barcode(bc: Barcode) -> str:
    return str(bc)


def parse_barcode(text: str) -> Barcode:
    out = Barcode()
    for line in text.strip().splitlines():
        iv, _, mult = line.partition(" x ")
        s, t = iv.strip()[1:-1].split(",")
        conv = lambda u: -INF if u == "-inf" else INF if u in ("+inf", "inf") else int(u)
        out[(conv(s), conv(t))] += int(mult)
    return out


@dataclass
class IntervalSummand:
    """``E_{s,t}`` in window positions; ``bases[l]`` are the strand vectors at ``l``."""

    s: float
    t: float
    kind: tuple
    spaces: dict
    bases: dict

    @property
    def multiplicity(self) -> int:
        return next(iter(self.spaces.values())).dim if self.spaces else 0

    def support(self) -> list:
        return sorted(self.spaces)


def address(l: int, p: Index, q: Index):
    """``(kind, s, t)`` of a cell ``C^l_{p,q}``, in window positions."""
    if p.kind == 0:
        b, s = "m", 1 + l - p.k
    elif p.kind == 2:
        b, s = "n", l + p.k
    else:
        b, s = "n", -INF
    if q.kind == 0:
        c, t = "m", l - 1 + q.k
    elif q.kind == 2:
        c, t = "n", l - q.k
    else:
        c, t = "n", INF
    return (b, c), s, t


def assemble(line: LineRep, grads: list) -> list:
    """Group the cells of every gradation into interval summands."""
    groups: dict = {}
    for l, g in enumerate(grads):
        for (p, q), cell in g.cells.items():
            kind, s, t = address(l, p, q)
            key = (s, t)
            if key not in groups:
                groups[key] = IntervalSummand(s, t, kind, {}, {})
            summand = groups[key]
            if summand.kind != kind:
                raise InconsistentAddress(
                    f"interval [{_fmt(s)},{_fmt(t)}] receives cells of kinds {summand.kind} and {kind}"
                )
            if l in summand.spaces:
                raise InconsistentAddress(f"two cells of [{_fmt(s)},{_fmt(t)}] at position {l}")
            summand.spaces[l] = cell.space
            summand.bases[l] = cell.basis
    return [groups[k] for k in sorted(groups)]


def barcode_of(line: LineRep, summands: list) -> Barcode:
    bc = Barcode()
    for sm in summands:
        bc[(line.coordinate(sm.s), line.coordinate(sm.t))] += sm.multiplicity
    return bc


# ---------------------------------------------------------------------------
# verification


@dataclass
class Certificate:
    ok: bool = True
    transcript: list = field(default_factory=list)
    failure: str | None = None

    def record(self, name: str, where: str, passed: bool):
        self.transcript.append(f"{'ok  ' if passed else 'FAIL'} {name} @ {where}")
        if not passed and self.ok:
            self.ok = False
            self.failure = f"{name} @ {where}"

    def summary(self) -> str:
        n = len(self.transcript)
        if self.ok:
            return f"certificate: {n} checks passed"
        return f"certificate: FAILED at {self.failure} ({n} checks run)"


def _space_at(line: LineRep, sm: IntervalSummand, l: int) -> Subspace:
    """Summand space at any position, stable ends included."""
    if 0 <= l < line.length:
        return sm.spaces.get(l, Subspace.zero(line.field, line.dim(l)))
    inside = sm.s <= l <= sm.t
    if not inside:
        return Subspace.zero(line.field, line.dim(l))
    end = 0 if l < 0 else line.length - 1
    return sm.spaces.get(end, Subspace.zero(line.field, line.dim(l)))


def verify(line: LineRep, summands: list) -> Certificate:
    """Recheck a decomposition: subrepresentations, isomorphisms, direct sum, dimensions, thinness."""
    cert = Certificate()
    fs = line.field
    n = line.length
    # (i) every summand is closed under every arrow, the two end arrows included
    for sm in summands:
        where = f"[{_fmt(line.coordinate(sm.s))},{_fmt(line.coordinate(sm.t))}]"
        for l in range(-1, n):
            m, f = line.arrow(l)
            a, b = _space_at(line, sm, l), _space_at(line, sm, l + 1)
            src, dst = (a, b) if f else (b, a)
            cert.record("subrepresentation", f"{where} a_{l}", image(m, src) <= dst)
    # (ii) isomorphisms inside [s,t), zero maps across its ends, infinite ends only at stable ends
    for sm in summands:
        where = f"[{_fmt(line.coordinate(sm.s))},{_fmt(line.coordinate(sm.t))}]"
        if sm.s == -INF:
            cert.record("left end stable", where, line.left_ext == STABLE)
        if sm.t == INF:
            cert.record("right end stable", where, line.right_ext == STABLE)
        d = sm.multiplicity
        for l in range(-1, n):
            m, f = line.arrow(l)
            a, b = _space_at(line, sm, l), _space_at(line, sm, l + 1)
            src, dst = (a, b) if f else (b, a)
            img = image(m, src)
            if sm.s <= l and l + 1 <= sm.t:
                cert.record("interior isomorphism", f"{where} a_{l}", src.dim == d and dst.dim == d and img == dst)
            else:
                cert.record("boundary zero", f"{where} a_{l}", img.dim == 0)
        for l in range(n):
            inside = sm.s <= l <= sm.t
            sp = sm.spaces.get(l)
            cert.record("support", f"{where} y_{l}", (sp is not None and sp.dim == d) if inside else sp is None)
    # (iii) direct sum at every position
    for l in range(n):
        parts = [sm.spaces[l] for sm in summands if l in sm.spaces]
        total = sum_all(parts, fs, line.dims[l])
        cert.record("independent", f"y_{l}", total.dim == sum(p.dim for p in parts))
        cert.record("spanning", f"y_{l}", total.dim == line.dims[l])
    # (iv) barcode dimension identity
    bc = barcode_of(line, summands)
    for l in range(n):
        cert.record("dimension identity", f"y_{l}", bc.dims_at(line.coordinate(l)) == line.dims[l])
    # thinness: the recorded bases are strands, so each block is mult copies of a thin interval
    for sm in summands:
        where = f"[{_fmt(line.coordinate(sm.s))},{_fmt(line.coordinate(sm.t))}]"
        ok = True
        for l in sm.support():
            if l + 1 in sm.spaces:
                m, f = line.arrow(l)
                u, v = sm.bases[l], sm.bases[l + 1]
                if len(u) != len(v):
                    ok = False
                    break
                pairs = zip(u, v) if f else zip(v, u)
                if any(tuple(m.apply(x)) != tuple(y) for x, y in pairs):
                    ok = False
                    break
            if rank_of_vectors(fs, sm.bases[l], line.dims[l]) != sm.multiplicity:
                ok = False
                break
        cert.record("thin strands", where, ok)
    return cert


# ---------------------------------------------------------------------------
# driver


@dataclass
class Decomposition:
    barcode: Barcode
    summands: list
    certificate: Certificate | None
    line: LineRep
    gradations: list = field(default_factory=list, repr=False)


def decompose(r, seed: int = 0, zero_vertex: int = 0, check: bool = True) -> Decomposition:
    """Interval decomposition of an A-type representation (or a ``LineRep``)."""
    line = r if isinstance(r, LineRep) else as_line(r)
    if line.is_zero():
        cert = verify(line, []) if check else None
        return Decomposition(Barcode(), [], cert, line, [])
    grads, _ = propagate_all(line, seed, zero_vertex)
    summands = assemble(line, grads)
    cert = verify(line, summands) if check else None
    return Decomposition(barcode_of(line, summands), summands, cert, line, grads)


# ---------------------------------------------------------------------------
# independent oracle


def _composite_rank(line: LineRep, a: int, b: int) -> int:
    if a == b:
        return line.dims[a]
    fs = line.field
    forward = line.forward[0]
    m = Matrix.identity(fs, line.dims[a] if forward else line.dims[b])
    if forward:
        for l in range(a, b):
            m = line.maps[l] @ m
    else:
        for l in range(b - 1, a - 1, -1):
            m = line.maps[l] @ m
    return m.rank()


def rank_oracle(r) -> Barcode:
    """Barcode of an equioriented window with zero ends by rank inclusion-exclusion."""
    line = r if isinstance(r, LineRep) else as_line(r)
    if not line.is_equioriented():
        raise NotEquioriented("the rank formula needs every arrow pointing the same way")
    if line.left_ext != ZERO or line.right_ext != ZERO:
        raise NotEquioriented("the rank formula is used with zero extensions only")
    n = line.length
    rk = {}
    for a in range(n):
        for b in range(a, n):
            rk[(a, b)] = _composite_rank(line, a, b)
    get = lambda a, b: rk.get((a, b), 0) if 0 <= a <= b < n else 0
    bc = Barcode()
    for s in range(n):
        for t in range(s, n):
            mult = get(s, t) - get(s - 1, t) - get(s, t + 1) + get(s - 1, t + 1)
            if mult:
                bc[(line.coordinate(s), line.coordinate(t))] = mult
    return bc
