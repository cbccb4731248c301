"""Representations of A-type lines: a finite window with two ends.

Positions ``0 .. N-1`` form the window and arrow ``a_l`` joins ``l`` and
``l+1``.  Each end continues to infinity either by zero spaces or by copies
of the end space joined by identities.  Because beyond-window data is
uniform, all transports from outside the window can be evaluated exactly at
the nearest window end (or at one zero pad vertex).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, WrongShape
from .exactalg import FieldSpec, Matrix, Subspace, image, preimage
from .quiver import QuiverShape, TailDecl, TOWARD_ATTACH, TOWARD_INFINITY, classify, path_order
from .repn import STABLE, ZERO, Representation


@dataclass(frozen=True)
class LineRep:
    field: FieldSpec
    dims: tuple
    maps: tuple
    forward: tuple
    left_ext: str = ZERO
    left_forward: bool = True
    right_ext: str = ZERO
    right_forward: bool = True
    origin: int = 0
    labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "forward", tuple(bool(f) for f in self.forward))
        n = len(self.dims)
        if len(self.maps) != max(n - 1, 0) or len(self.forward) != len(self.maps):
            raise DimensionMismatch("a window of N positions needs N-1 arrows")
        for l, (m, f) in enumerate(zip(self.maps, self.forward)):
            want = (self.dims[l + 1], self.dims[l]) if f else (self.dims[l], self.dims[l + 1])
            if (m.rows, m.cols) != want:
                raise DimensionMismatch(f"arrow a_{l} needs shape {want}, got {(m.rows, m.cols)}")
        for e in (self.left_ext, self.right_ext):
            if e not in (ZERO, STABLE):
                raise WrongShape(f"unknown extension {e!r}")
        if n == 0:
            raise WrongShape("a line needs at least one window position")

    @classmethod
    def from_lists(cls, fs: FieldSpec, dims, maps, forward=None, **kw):
        forward = [True] * (len(dims) - 1) if forward is None else list(forward)
        mats = []
        for l, m in enumerate(maps):
            if isinstance(m, Matrix):
                mats.append(m)
            else:
                cols = dims[l] if forward[l] else dims[l + 1]
                mats.append(Matrix.from_rows(fs, m, cols=cols))
        return cls(fs, tuple(dims), tuple(mats), tuple(forward), **kw)

    @property
    def length(self) -> int:
        return len(self.dims)

    # -- extended positions: a zero pad at -1 / N, stable ends clamp

    @property
    def lo(self) -> int:
        return -1 if self.left_ext == ZERO else 0

    @property
    def hi(self) -> int:
        return self.length if self.right_ext == ZERO else self.length - 1

    def dim(self, l: int) -> int:
        if 0 <= l < self.length:
            return self.dims[l]
        if l < 0:
            return 0 if self.left_ext == ZERO else self.dims[0]
        return 0 if self.right_ext == ZERO else self.dims[-1]

    def arrow(self, l: int):
        """``(matrix, forward)`` for the arrow between ``l`` and ``l+1``."""
        n = self.length
        if 0 <= l < n - 1:
            return self.maps[l], self.forward[l]
        if l < 0:
            f = self.left_forward
            ext = self.left_ext
        else:
            f = self.right_forward
            ext = self.right_ext
        du, dv = self.dim(l), self.dim(l + 1)
        if ext == STABLE and du == dv:
            return Matrix.identity(self.field, du), f
        src, dst = (du, dv) if f else (dv, du)
        return Matrix.zeros(self.field, dst, src), f

    def push(self, l: int, s: Subspace) -> Subspace:
        """Transport from position ``l`` to ``l+1``."""
        m, f = self.arrow(l)
        return image(m, s) if f else preimage(m, s)

    def pull(self, l: int, s: Subspace) -> Subspace:
        """Transport from position ``l`` to ``l-1``."""
        m, f = self.arrow(l - 1)
        return preimage(m, s) if f else image(m, s)

    def full(self, l: int) -> Subspace:
        return Subspace.full(self.field, self.dim(l))

    def zero(self, l: int) -> Subspace:
        return Subspace.zero(self.field, self.dim(l))

    def is_equioriented(self) -> bool:
        return len(set(self.forward)) <= 1

    def coordinate(self, l):
        """Global coordinate of window position ``l`` (infinities pass through)."""
        if l in (float("-inf"), float("inf")):
            return l
        return l + self.origin

    def is_zero(self) -> bool:
        return not any(self.dims)


def reflect(line: LineRep) -> LineRep:
    """Mirror the window: position ``l`` becomes ``N-1-l``; arrows keep their maps."""
    n = line.length
    return LineRep(
        line.field,
        tuple(reversed(line.dims)),
        tuple(reversed(line.maps)),
        tuple(not f for f in reversed(line.forward)),
        left_ext=line.right_ext,
        left_forward=not line.right_forward,
        right_ext=line.left_ext,
        right_forward=not line.left_forward,
        origin=-(line.origin + n - 1),
    )


def dual(line: LineRep) -> LineRep:
    """Reverse every arrow and transpose every map."""
    return LineRep(
        line.field,
        line.dims,
        tuple(m.transpose() for m in line.maps),
        tuple(not f for f in line.forward),
        left_ext=line.left_ext,
        left_forward=not line.left_forward,
        right_ext=line.right_ext,
        right_forward=not line.right_forward,
        origin=line.origin,
    )


def as_line(r: Representation) -> LineRep:
    """View a representation of an A-type shape as a line.

    The shape must be a path with at most one tail at each end.  A tail at
    an end becomes that end's extension; an end without a tail is a zero end.
    """
    q = r.shape
    cls = classify(q)
    if cls.family not in ("A", "AInfinity", "AInfinityInfinity"):
        raise WrongShape(f"expected an A-type shape, got {cls}")
    order = path_order(q)
    left = right = None
    for i, t in enumerate(q.tails):
        if len(order) == 1:
            # a lone vertex takes its first tail on the right
            if right is None:
                right = (i, t)
            else:
                left = (i, t)
        elif t.attach == order[0] and left is None:
            left = (i, t)
        elif t.attach == order[-1] and right is None:
            right = (i, t)
        else:
            raise WrongShape(f"tail at {t.attach!r} is not at a free end of the path")
    dims = tuple(r.dims[v] for v in order)
    maps, fwd = [], []
    for u, v in zip(order, order[1:]):
        if (u, v) in r.maps:
            maps.append(r.maps[(u, v)])
            fwd.append(True)
        else:
            maps.append(r.maps[(v, u)])
            fwd.append(False)
    kw = {}
    if left is not None:
        i, t = left
        kw["left_ext"] = r.tail_ext[i]
        # arrows beyond the left end point left when they point toward infinity
        kw["left_forward"] = not t.outward
    if right is not None:
        i, t = right
        kw["right_ext"] = r.tail_ext[i]
        kw["right_forward"] = t.outward
    origin = order[0] if all(isinstance(v, int) for v in order) and order == list(range(order[0], order[0] + len(order))) else 0
    return LineRep(r.field, dims, tuple(maps), tuple(fwd), origin=origin, labels=tuple(order), **kw)


def to_representation(line: LineRep, zero_tails: bool = False) -> Representation:
    """A path representation with vertices ``origin .. origin+N-1``.

    Stable ends become declared tails; zero ends do too when ``zero_tails``.
    """
    verts = tuple(range(line.origin, line.origin + line.length))
    arrows = []
    maps = {}
    for l, (m, f) in enumerate(zip(line.maps, line.forward)):
        a = (verts[l], verts[l + 1]) if f else (verts[l + 1], verts[l])
        arrows.append(a)
        maps[a] = m
    tails, ext = [], []
    if line.left_ext == STABLE or zero_tails:
        tails.append(TailDecl(verts[0], TOWARD_ATTACH if line.left_forward else TOWARD_INFINITY))
        ext.append(line.left_ext)
    if line.right_ext == STABLE or zero_tails:
        tails.append(TailDecl(verts[-1], TOWARD_INFINITY if line.right_forward else TOWARD_ATTACH))
        ext.append(line.right_ext)
    if line.length == 1 and len(tails) == 2:
        # as_line reads a lone vertex's first tail as the right end
        tails.reverse()
        ext.reverse()
    shape = QuiverShape(verts, tuple(arrows), tuple(tails))
    dims = {v: d for v, d in zip(verts, line.dims)}
    return Representation(shape, line.field, dims, maps, tuple(ext))
