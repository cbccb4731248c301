"""Linear filtrations indexed by ``m_0 < m_1 < ... < n_-inf < ... < n_-1 < n_0``.

At each window position ``l`` of a line, ``L^l`` records transports from the
left (of the zero space for ``m_j``, of the full space for ``n_j``, strands
for ``n_-inf``) and ``R^l`` the same from the right.  A filtration is stored
by the finitely many values its chains take before stabilizing.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Iterable

from .exactalg import (
    FieldSpec,
    Subspace,
    complement_in,
    intersect,
    solve_within,
    subspace_sum,
    sum_all,
)
from .line import LineRep

# ---------------------------------------------------------------------------
# the index set


@dataclass(frozen=True, order=True)
class Index:
    """``kind`` 0 is ``m_k`` (k >= 0), 1 is ``n_-inf``, 2 is ``n_k`` (k <= 0)."""

    kind: int
    k: int = 0

    def __post_init__(self):
        if self.kind == 0 and self.k < 0:
            raise ValueError("m-indices are nonnegative")
        if self.kind == 2 and self.k > 0:
            raise ValueError("n-indices are nonpositive")
        if self.kind == 1 and self.k != 0:
            raise ValueError("n_-inf carries no integer")

    def __repr__(self):
        if self.kind == 0:
            return f"m{self.k}"
        if self.kind == 1:
            return "n-inf"
        return f"n{self.k}"

    @property
    def is_m(self):
        return self.kind == 0

    @property
    def is_ninf(self):
        return self.kind == 1

    @property
    def is_n(self):
        return self.kind == 2


def M(i: int) -> Index:
    return Index(0, i)


def N(j: int) -> Index:
    return Index(2, j)


NINF = Index(1, 0)


@dataclass(frozen=True)
class LinearFiltration:
    """``F_{m_i} = m[min(i, len-1)]``, ``F_{n_j} = n[min(-j, len-1)]``, ``F_{n_-inf} = ninf``."""

    vertex: int
    side: str
    m: tuple
    n: tuple
    ninf: Subspace

    @property
    def ambient(self) -> int:
        return self.ninf.ambient_dim

    @property
    def field(self) -> FieldSpec:
        return self.ninf.field

    def __getitem__(self, idx: Index) -> Subspace:
        if idx.kind == 0:
            return self.m[min(idx.k, len(self.m) - 1)]
        if idx.kind == 1:
            return self.ninf
        return self.n[min(-idx.k, len(self.n) - 1)]

    def below(self, idx: Index) -> Subspace:
        """``F_{<idx}``: the value at the predecessor, or the stabilized m-chain below ``n_-inf``."""
        if idx.kind == 0:
            if idx.k == 0:
                return Subspace.zero(self.field, self.ambient)
            return self[M(idx.k - 1)]
        if idx.kind == 1:
            return self.m[-1]
        return self.n[min(-idx.k + 1, len(self.n) - 1)]

    def stored_indices(self) -> list:
        """One index per stored value, plus the first index of each stabilized region."""
        out = [M(i) for i in range(len(self.m) + 1)]
        out.append(NINF)
        out += [N(-k) for k in range(len(self.n), -1, -1)]
        return out

    def jumps(self) -> list:
        """Indices ``p`` with ``F_{<p} != F_p``, in increasing order."""
        out = [M(i) for i in range(1, len(self.m)) if self.m[i] != self.m[i - 1]]
        if self.ninf != self.m[-1]:
            out.append(NINF)
        out += [N(-k) for k in range(len(self.n) - 2, -1, -1) if self.n[k] != self.n[k + 1]]
        return out


def _trim(chain: list) -> tuple:
    # trailing repeats equal the implied stabilized tail, so drop them
    while len(chain) > 1 and chain[-1] == chain[-2]:
        chain.pop()
    return tuple(chain)


def _base(line: LineRep, end: int, stable: bool):
    fs = line.field
    d = line.dim(end)
    zero, full = Subspace.zero(fs, d), Subspace.full(fs, d)
    if stable:
        return [zero], [full], full
    return [zero], [zero], zero


def build_all_LR(line: LineRep):
    """``(Ls, Rs)`` for every window position, by the one-step recurrences."""
    n = line.length
    Ls = []
    m, nn, ninf = _base(line, line.lo, line.left_ext == "stable")
    if line.lo == 0:
        Ls.append(LinearFiltration(0, "L", _trim(m), _trim(nn), ninf))
        start = 1
    else:
        start = 0
    for l in range(start, n):
        step = lambda s: line.push(l - 1, s)
        m = [Subspace.zero(line.field, line.dim(l))] + [step(x) for x in m]
        nn = [Subspace.full(line.field, line.dim(l))] + [step(x) for x in nn]
        ninf = step(ninf)
        m, nn = list(_trim(m)), list(_trim(nn))
        Ls.append(LinearFiltration(l, "L", tuple(m), tuple(nn), ninf))
    Rs = [None] * n
    m, nn, ninf = _base(line, line.hi, line.right_ext == "stable")
    if line.hi == n - 1:
        Rs[n - 1] = LinearFiltration(n - 1, "R", _trim(m), _trim(nn), ninf)
        stop = n - 2
    else:
        stop = n - 1
    for l in range(stop, -1, -1):
        step = lambda s: line.pull(l + 1, s)
        m = [Subspace.zero(line.field, line.dim(l))] + [step(x) for x in m]
        nn = [Subspace.full(line.field, line.dim(l))] + [step(x) for x in nn]
        ninf = step(ninf)
        m, nn = list(_trim(m)), list(_trim(nn))
        Rs[l] = LinearFiltration(l, "R", tuple(m), tuple(nn), ninf)
    return Ls, Rs


def _transport_span(line: LineRep, src: int, dst: int, s: Subspace) -> Subspace:
    if src <= dst:
        for k in range(src, dst):
            s = line.push(k, s)
    else:
        for k in range(src, dst, -1):
            s = line.pull(k, s)
    return s


def build_LR(line: LineRep, l: int):
    """``(L^l, R^l)`` straight from the definitions, transport by transport.

    Sources beyond a zero end sit at the zero pad; beyond a stable end they
    are clamped to the end position, which gives the identical transport.
    The strand space ``n_-inf`` is the transport of the full space at the
    farthest source, which is where the chain of full-space transports has
    stabilized.
    """
    fs = line.field
    out = []
    for side in ("L", "R"):
        if side == "L":
            far = line.lo
            src_of = lambda j: max(l - j, far)
            reach = l - far
        else:
            far = line.hi
            src_of = lambda j: min(l + j, far)
            reach = far - l
        m = [_transport_span(line, src_of(j), l, Subspace.zero(fs, line.dim(src_of(j)))) for j in range(reach + 2)]
        nn = [_transport_span(line, src_of(k), l, Subspace.full(fs, line.dim(src_of(k)))) for k in range(reach + 2)]
        m[0] = Subspace.zero(fs, line.dim(l))
        ninf = nn[-1]
        out.append(LinearFiltration(l, side, _trim(m), _trim(nn), ninf))
    return tuple(out)


# ---------------------------------------------------------------------------
# product filtrations and almost gradations


@dataclass(frozen=True)
class ProductFiltration:
    left: LinearFiltration
    right: LinearFiltration

    def __call__(self, p: Index, q: Index) -> Subspace:
        return intersect(self.left[p], self.right[q])

    @property
    def ambient(self):
        return self.left.ambient

    @property
    def field(self):
        return self.left.field


def less_than(pf: ProductFiltration, p: Index, q: Index) -> Subspace:
    """``L_p & R_{<q} + L_{<p} & R_q``."""
    a = intersect(pf.left[p], pf.right.below(q))
    b = intersect(pf.left.below(p), pf.right[q])
    return subspace_sum(a, b)


@dataclass(frozen=True)
class Cell:
    """One nonzero ``C_{p,q}`` with the basis used to follow it between positions."""

    space: Subspace
    basis: tuple
    source: tuple | None = None


@dataclass
class AlmostGradation:
    vertex: int
    cells: dict
    seed: int = 0

    def __getitem__(self, pq) -> Subspace:
        c = self.cells.get(pq)
        return c.space if c is not None else None

    def space(self, p: Index, q: Index, fs: FieldSpec, ambient: int) -> Subspace:
        c = self.cells.get((p, q))
        return c.space if c is not None else Subspace.zero(fs, ambient)

    def nonzero(self) -> list:
        return sorted(self.cells)

    def subspaces(self) -> list:
        return [self.cells[k].space for k in sorted(self.cells)]


def cell_seed(seed: int, l: int, p: Index, q: Index) -> int:
    """Per-cell complement seed; seed 0 stays 0 so the canonical choice is used everywhere."""
    if seed == 0:
        return 0
    key = f"{seed}:{l}:{p.kind},{p.k}:{q.kind},{q.k}".encode()
    return zlib.crc32(key) or 1


def _fresh(pf: ProductFiltration, l: int, p: Index, q: Index, seed: int):
    target = pf(p, q)
    lt = less_than(pf, p, q)
    c = complement_in(lt, target, cell_seed(seed, l, p, q))
    if c.is_zero():
        return None
    return Cell(c, c.basis, None)


def gradation_at(pf: ProductFiltration, seed: int = 0, vertex: int = 0) -> AlmostGradation:
    """An almost gradation of ``L & R``; only jump pairs can carry a nonzero cell."""
    cells = {}
    for p in pf.left.jumps():
        for q in pf.right.jumps():
            c = _fresh(pf, vertex, p, q, seed)
            if c is not None:
                cells[(p, q)] = c
    return AlmostGradation(vertex, cells, seed)


def _shift_forward(p: Index, q: Index):
    """Target address at ``l+1`` of a cell at ``l`` (``None`` when it dies)."""
    if p.kind == 0:
        np_ = M(p.k + 1) if p.k >= 1 else None
    elif p.kind == 1:
        np_ = NINF
    else:
        np_ = N(p.k - 1)
    if q.kind == 0:
        nq = M(q.k - 1) if q.k >= 2 else None
    elif q.kind == 1:
        nq = NINF
    else:
        nq = N(q.k + 1) if q.k <= -1 else None
    if np_ is None or nq is None:
        return None
    return np_, nq


def _shift_backward(p: Index, q: Index):
    """Target address at ``l-1`` of a cell at ``l``; the L/R mirror of the forward rule."""
    back = _shift_forward(q, p)
    if back is None:
        return None
    return back[1], back[0]


def _fresh_rows(direction: int) -> tuple:
    return (M(1), N(0))


def propagate(
    line: LineRep,
    l: int,
    grad: AlmostGradation,
    pf_next: ProductFiltration,
    direction: int,
    seed: int = 0,
) -> AlmostGradation:
    """The almost gradation at ``l + direction`` obtained by transporting ``grad``.

    Cells are carried along the arrow between the two positions: by images
    when the arrow points the way we move, otherwise by lifting each basis
    vector inside the target ``L_p & R_q``.  Cells whose new address falls
    off the index set die.  Cells whose moving coordinate is ``m_1`` or
    ``n_0`` at the new position are fresh complements.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    fs = line.field
    tgt = l + direction
    if direction == 1:
        m, forward = line.arrow(l)
        along = forward
        shift = _shift_forward
    else:
        m, forward = line.arrow(l - 1)
        along = not forward
        shift = _shift_backward
    cells = {}
    for (p, q), cell in grad.cells.items():
        addr = shift(p, q)
        if addr is None:
            continue
        target = pf_next(*addr)
        if along:
            carried = tuple(m.apply(b) for b in cell.basis)
        else:
            carried = []
            for b in cell.basis:
                x = solve_within(m, target, b)
                if x is None:
                    raise AssertionError(f"cell {p},{q} at {l} has no lift into {addr}")
                carried.append(x)
            carried = tuple(carried)
        space = Subspace._trusted(fs, line.dim(tgt), [list(v) for v in carried])
        cells[addr] = Cell(space, carried, (p, q))
    fresh = _fresh_rows(direction)
    if direction == 1:
        pairs = [(p, q) for p in pf_next.left.jumps() if p in fresh for q in pf_next.right.jumps()]
    else:
        pairs = [(p, q) for q in pf_next.right.jumps() if q in fresh for p in pf_next.left.jumps()]
    for p, q in pairs:
        c = _fresh(pf_next, tgt, p, q, seed)
        if c is not None:
            cells[(p, q)] = c
    return AlmostGradation(tgt, cells, seed)


def propagate_all(line: LineRep, seed: int = 0, zero_vertex: int = 0, LR=None):
    """Almost gradations at every window position, grown outward from ``zero_vertex``."""
    Ls, Rs = LR if LR is not None else build_all_LR(line)
    pfs = [ProductFiltration(a, b) for a, b in zip(Ls, Rs)]
    grads = [None] * line.length
    grads[zero_vertex] = gradation_at(pfs[zero_vertex], seed, zero_vertex)
    for l in range(zero_vertex, line.length - 1):
        grads[l + 1] = propagate(line, l, grads[l], pfs[l + 1], 1, seed)
    for l in range(zero_vertex, 0, -1):
        grads[l - 1] = propagate(line, l, grads[l], pfs[l - 1], -1, seed)
    return grads, pfs


def linear_gradation(f: LinearFiltration, seed: int = 0) -> dict:
    """Almost gradation of a single linear filtration: ``F_p = F_{<p} (+) C^p``."""
    out = {}
    for p in f.stored_indices():
        c = complement_in(f.below(p), f[p], seed)
        if not c.is_zero():
            out[p] = c
    return out


# ---------------------------------------------------------------------------
# checks


def check_independent(cells: Iterable[Subspace]) -> bool:
    cells = list(cells)
    if not cells:
        return True
    total = sum_all(cells, cells[0].field, cells[0].ambient_dim)
    return total.dim == sum(c.dim for c in cells)


def _index_grid(pf: ProductFiltration):
    return pf.left.stored_indices(), pf.right.stored_indices()


def check_gradation(pf: ProductFiltration, grad: AlmostGradation) -> bool:
    """Every stored ``(p,q)``: ``L_p & R_q = [L & R]_{<(p,q)} (+) C_{p,q}``."""
    ps, qs = _index_grid(pf)
    fs, d = pf.field, pf.ambient
    for p in ps:
        for q in qs:
            c = grad.space(p, q, fs, d)
            lt = less_than(pf, p, q)
            if lt.dim + c.dim != pf(p, q).dim:
                return False
            if subspace_sum(lt, c) != pf(p, q):
                return False
    for (p, q), cell in grad.cells.items():
        if p not in ps or q not in qs:
            c = cell.space
            if subspace_sum(less_than(pf, p, q), c) != pf(p, q):
                return False
            if less_than(pf, p, q).dim + c.dim != pf(p, q).dim:
                return False
    return True


def check_spanning(pf: ProductFiltration, grad: AlmostGradation) -> bool:
    """The cells span the space and each ``F_(p,q)`` is spanned by the cells below it."""
    fs, d = pf.field, pf.ambient
    everything = sum_all([c.space for c in grad.cells.values()], fs, d)
    if everything.dim != d:
        return False
    ps, qs = _index_grid(pf)
    for p in ps:
        for q in qs:
            below = [c.space for (pp, qq), c in grad.cells.items() if pp <= p and qq <= q]
            if sum_all(below, fs, d) != pf(p, q):
                return False
    return True


def is_closed_under_intersection(f: LinearFiltration) -> bool:
    """The only unbounded-below saturated subset is ``{..., n_-1, n_0}``: its meet must be ``F_{n_-inf}``."""
    return f.n[-1] == f.ninf


# ---------------------------------------------------------------------------
# the finite-dimensional nonspanning example


@dataclass(frozen=True)
class ChainFiltration:
    """A filtration of one space on ``Z_{<=0} + {-inf}``: ``values[k] = F_{-k}``, stable past the end."""

    values: tuple
    bottom: Subspace

    def __getitem__(self, i):
        if i == float("-inf"):
            return self.bottom
        return self.values[min(-i, len(self.values) - 1)]

    def below(self, i):
        # no element lies strictly between -inf and the integers
        if i == float("-inf"):
            return Subspace.zero(self.bottom.field, self.bottom.ambient_dim)
        return self[i - 1]

    def as_linear(self, vertex: int = 0) -> LinearFiltration:
        zero = Subspace.zero(self.bottom.field, self.bottom.ambient_dim)
        return LinearFiltration(vertex, "L", (zero,), tuple(self.values), self.bottom)


def nonspanning_example(fs: FieldSpec | None = None) -> ChainFiltration:
    """``V`` one-dimensional, ``F_i = V`` for every integer ``i <= 0`` and ``F_-inf = 0``."""
    fs = fs or FieldSpec(2)
    return ChainFiltration((Subspace.full(fs, 1),), Subspace.zero(fs, 1))


def chain_gradation(f: ChainFiltration, seed: int = 0) -> dict:
    """Every almost gradation: ``C_i`` complements ``F_{<i}`` in ``F_i`` at every index."""
    out = {}
    for i in [0, -1, -2, float("-inf")]:
        out[i] = complement_in(f.below(i), f[i], seed)
    return out


def chain_spans(f: ChainFiltration, cells: dict) -> bool:
    whole = f[0]
    total = sum_all(cells.values(), whole.field, whole.ambient_dim)
    return total == whole


def chain_closed_under_intersection(f: ChainFiltration) -> bool:
    meet = f.values[-1]
    for v in f.values:
        meet = intersect(meet, v)
    return meet == f.bottom
