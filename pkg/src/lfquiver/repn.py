"""Locally finite-dimensional representations of quiver shapes.

A representation stores vector space dimensions and matrices on the finite
part of the shape.  Each tail carries an extension: ``"zero"`` (all ray
spaces vanish) or ``"stable"`` (every ray space equals the attach space and
ray arrows act as identities).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadTailExtension, DimensionMismatch, NotAJourney, NotARay, ShapeMismatch
from .exactalg import FieldSpec, Matrix, Subspace, contains, image, preimage, solve_within
from .quiver import QuiverShape

ZERO = "zero"
STABLE = "stable"
_EXTENSIONS = (ZERO, STABLE)


@dataclass(frozen=True)
class RayVertex:
    """The ``n``-th vertex (``n >= 1``) beyond the attach vertex of tail ``tail``."""

    tail: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise NotARay("ray vertices are numbered from 1")


@dataclass(frozen=True)
class Representation:
    shape: QuiverShape
    field: FieldSpec
    dims: dict
    maps: dict
    tail_ext: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", dict(self.dims))
        object.__setattr__(self, "maps", {tuple(k): v for k, v in self.maps.items()})
        ext = tuple(self.tail_ext) if self.tail_ext else tuple(ZERO for _ in self.shape.tails)
        object.__setattr__(self, "tail_ext", ext)

    # -- construction helpers

    @classmethod
    def build(cls, shape: QuiverShape, fs: FieldSpec, dims, maps=None, tail_ext=()):
        """Fill absent maps with zero matrices and check the result."""
        maps = dict(maps or {})
        full = {}
        for a in shape.arrows:
            src, dst = a
            m = maps.get(a)
            if m is None:
                m = Matrix.zeros(fs, dims[dst], dims[src])
            elif not isinstance(m, Matrix):
                m = Matrix.from_rows(fs, m, cols=dims[src])
            full[a] = m
        r = cls(shape, fs, dims, full, tail_ext)
        validate(r)
        return r

    @classmethod
    def zero(cls, shape: QuiverShape, fs: FieldSpec, tail_ext=()):
        return cls.build(shape, fs, {v: 0 for v in shape.vertices}, {}, tail_ext)

    # -- accessors covering ray vertices

    def dim(self, v) -> int:
        if isinstance(v, RayVertex):
            self._check_tail(v.tail)
            if self.tail_ext[v.tail] == ZERO:
                return 0
            return self.dims[self.shape.tails[v.tail].attach]
        return self.dims[v]

    def _check_tail(self, i):
        if not 0 <= i < len(self.shape.tails):
            raise NotARay(f"no tail with index {i}")

    def _ray_neighbors(self, v):
        if isinstance(v, RayVertex):
            prev = RayVertex(v.tail, v.n - 1) if v.n > 1 else self.shape.tails[v.tail].attach
            return [prev, RayVertex(v.tail, v.n + 1)]
        return [RayVertex(i, 1) for i, t in enumerate(self.shape.tails) if t.attach == v]

    def neighbors(self, v) -> list:
        out = [] if isinstance(v, RayVertex) else self.shape.neighbors(v)
        return out + self._ray_neighbors(v)

    def arrow(self, u, v):
        """``(matrix, forward)`` for the arrow joining ``u`` and ``v``.

        ``forward`` is true when the arrow points from ``u`` to ``v``; the
        matrix always maps the arrow's source space to its target space.
        """
        ru, rv = isinstance(u, RayVertex), isinstance(v, RayVertex)
        if not ru and not rv:
            if (u, v) in self.maps:
                return self.maps[(u, v)], True
            if (v, u) in self.maps:
                return self.maps[(v, u)], False
            raise NotAJourney(f"no arrow between {u!r} and {v!r}")
        if ru and rv:
            if u.tail != v.tail or abs(u.n - v.n) != 1:
                raise NotAJourney(f"no arrow between {u!r} and {v!r}")
            tail = u.tail
            outward_step = v.n > u.n
        else:
            ray, base = (u, v) if ru else (v, u)
            t = self.shape.tails[ray.tail]
            if ray.n != 1 or t.attach != base:
                raise NotAJourney(f"no arrow between {u!r} and {v!r}")
            tail = ray.tail
            outward_step = rv
        t = self.shape.tails[tail]
        forward = outward_step == t.outward
        du, dv = self.dim(u), self.dim(v)
        src, dst = (du, dv) if forward else (dv, du)
        if self.tail_ext[tail] == STABLE and du == dv:
            return Matrix.identity(self.field, du), forward
        return Matrix.zeros(self.field, dst, src), forward

    def dimension_vector(self) -> dict:
        return {v: self.dims[v] for v in self.shape.vertices}

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0


def validate(r: Representation) -> None:
    shape = r.shape
    for v in shape.vertices:
        d = r.dims.get(v)
        if d is None or not isinstance(d, int) or d < 0:
            raise DimensionMismatch(f"vertex {v!r} needs a nonnegative integer dimension")
    if set(r.dims) != set(shape.vertices):
        raise DimensionMismatch("dimension keys do not match the vertex set")
    for a in shape.arrows:
        m = r.maps.get(a)
        if m is None:
            raise ShapeMismatch(a, f"arrow {a[0]}->{a[1]} has no matrix")
        want = (r.dims[a[1]], r.dims[a[0]])
        if (m.rows, m.cols) != want:
            raise ShapeMismatch(a, f"arrow {a[0]}->{a[1]} needs a {want[0]}x{want[1]} matrix, got {m.rows}x{m.cols}")
        if m.field != r.field:
            raise ShapeMismatch(a, f"arrow {a[0]}->{a[1]} matrix is over {m.field}, not {r.field}")
    extra = set(r.maps) - set(shape.arrows)
    if extra:
        a = sorted(extra, key=repr)[0]
        raise ShapeMismatch(a, f"matrix given for non-arrow {a}")
    if len(r.tail_ext) != len(shape.tails):
        raise BadTailExtension(f"{len(shape.tails)} tails but {len(r.tail_ext)} extensions")
    for e in r.tail_ext:
        if e not in _EXTENSIONS:
            raise BadTailExtension(f"tail extension must be 'zero' or 'stable', got {e!r}")


# ---------------------------------------------------------------------------
# transport and strands


def step(r: Representation, u, v, s: Subspace) -> Subspace:
    """Transport ``s`` from ``u`` to the adjacent vertex ``v``."""
    m, forward = r.arrow(u, v)
    return image(m, s) if forward else preimage(m, s)


def transport(r: Representation, start, journey: Sequence, s: Subspace) -> Subspace:
    """Fold image/preimage along ``journey`` (which may repeat ``start`` first)."""
    path = list(journey)
    if path and path[0] == start:
        path = path[1:]
    if len(set([start] + path)) != len(path) + 1:
        raise NotAJourney("a journey may not revisit a vertex")
    if s.ambient_dim != r.dim(start):
        raise DimensionMismatch(f"subspace of F^{s.ambient_dim} at a vertex of dimension {r.dim(start)}")
    cur, here = s, start
    for v in path:
        cur = step(r, here, v, cur)
        here = v
    return cur


@dataclass(frozen=True)
class Ray:
    """An infinite journey: ``path`` (from the start to the attach vertex) then tail ``tail``."""

    path: tuple
    tail: int

    def vertices(self, depth: int) -> list:
        return list(self.path) + [RayVertex(self.tail, n) for n in range(1, depth + 1)]


def _check_ray(r: Representation, ray: Ray):
    if not 0 <= ray.tail < len(r.shape.tails):
        raise NotARay(f"no tail with index {ray.tail}")
    if not ray.path or ray.path[-1] != r.shape.tails[ray.tail].attach:
        raise NotARay("a ray's finite path must end at the tail's attach vertex")
    for u, v in zip(ray.path, ray.path[1:]):
        if r.shape.arrow_between(u, v) is None:
            raise NotARay(f"{u!r} and {v!r} are not adjacent")


def strand_limit(r: Representation, vertex, ray: Ray) -> Subspace:
    """Vectors at ``vertex`` extending to a strand along ``ray``.

    The full space is transported back from ever deeper points of the ray;
    the resulting decreasing chain is returned once it stops changing.
    """
    _check_ray(r, ray)
    if ray.path[0] != vertex:
        raise NotARay("a ray must start at the given vertex")
    maxdim = max([r.dim(v) for v in ray.path] + [0])
    bound = len(ray.path) + maxdim + 1
    prev = None
    for depth in range(0, bound + 1):
        verts = ray.vertices(depth)
        far = verts[-1]
        cur = Subspace.full(r.field, r.dim(far))
        back = list(reversed(verts))
        cur = transport(r, far, back, cur)
        if prev is not None and cur == prev and depth >= 1:
            return cur
        prev = cur
    return prev


def strand_witness(r: Representation, ray: Ray, v: Sequence, length: int):
    """Vectors ``v_0 = v, v_1, ...`` along the first ``length`` steps of ``ray``.

    Each next vector is chosen inside the strand limit at that vertex, which
    is what guarantees the walk can always continue.  Returns ``None`` when
    ``v`` has no strand.
    """
    verts = ray.vertices(length)
    if not contains(strand_limit(r, verts[0], ray), v):
        return None
    out = [tuple(v)]
    for k in range(1, len(verts)):
        u, w = verts[k - 1], verts[k]
        sub_ray = Ray(tuple(ray.path[k:]), ray.tail) if k < len(ray.path) else None
        if sub_ray is not None:
            target = strand_limit(r, w, sub_ray)
        else:
            target = Subspace.full(r.field, r.dim(w)) if r.tail_ext[ray.tail] == STABLE else Subspace.zero(r.field, 0)
        m, forward = r.arrow(u, w)
        prev = out[-1]
        if forward:
            nxt = m.apply(prev)
        else:
            nxt = solve_within(m, target, prev)
            if nxt is None:
                return None
        out.append(tuple(nxt))
    return out


# ---------------------------------------------------------------------------
# FLEI


@dataclass(frozen=True)
class FleiReport:
    flei: bool
    non_iso_arrows: tuple


def is_flei(r: Representation) -> FleiReport:
    """Finitely many non-isomorphisms; lists every non-isomorphism arrow.

    Stable ray arrows are identities.  A zero ray arrow out of the attach
    vertex is an isomorphism only when the attach space is zero; deeper zero
    ray arrows are always isomorphisms between zero spaces.
    """
    bad = []
    for a in r.shape.arrows:
        if not r.maps[a].is_isomorphism():
            bad.append(a)
    for i, t in enumerate(r.shape.tails):
        if r.tail_ext[i] == ZERO and r.dims[t.attach] != 0:
            ray = RayVertex(i, 1)
            bad.append((t.attach, ray) if t.outward else (ray, t.attach))
    return FleiReport(True, tuple(bad))


# ---------------------------------------------------------------------------
# subrepresentations


def is_subrepresentation(r: Representation, spaces: dict) -> bool:
    """``spaces`` maps every vertex to a subspace; check closure under arrows."""
    for (src, dst), m in r.maps.items():
        if not image(m, spaces[src]) <= spaces[dst]:
            return False
    return True


def restrict(r: Representation, spaces: dict, tail_ext=None) -> Representation:
    """The subrepresentation on ``spaces`` written in the RREF bases."""
    fs = r.field
    dims = {v: spaces[v].dim for v in r.shape.vertices}
    maps = {}
    for (src, dst), m in r.maps.items():
        cols = []
        for b in spaces[src].basis:
            w = m.apply(b)
            if not contains(spaces[dst], w):
                raise DimensionMismatch(f"arrow {src}->{dst} leaves the subspace")
            cols.append(spaces[dst].coordinates(w))
        maps[(src, dst)] = Matrix.from_columns(fs, cols, dims[dst]) if cols else Matrix.zeros(fs, dims[dst], 0)
    return Representation(r.shape, fs, dims, maps, tail_ext if tail_ext is not None else r.tail_ext)


def direct_sum(a: Representation, b: Representation) -> Representation:
    """Block-diagonal sum on the same shape (tails must agree)."""
    if a.shape != b.shape or a.field != b.field:
        raise DimensionMismatch("direct sum needs a common shape and field")
    if a.tail_ext != b.tail_ext:
        raise BadTailExtension("direct sum needs matching tail extensions")
    fs = a.field
    dims = {v: a.dims[v] + b.dims[v] for v in a.shape.vertices}
    maps = {}
    for arr in a.shape.arrows:
        ma, mb = a.maps[arr], b.maps[arr]
        rows = [list(r) + [fs.zero] * mb.cols for r in ma.data]
        rows += [[fs.zero] * ma.cols + list(r) for r in mb.data]
        maps[arr] = Matrix(fs, ma.rows + mb.rows, ma.cols + mb.cols, tuple(tuple(r) for r in rows))
    return Representation(a.shape, fs, dims, maps, a.tail_ext)
