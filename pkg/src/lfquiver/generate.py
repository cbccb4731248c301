"""Seeded random representations for tests, demos and the self-test."""
from __future__ import annotations

import random

from .exactalg import FieldSpec, Matrix
from .line import LineRep
from .quiver import QuiverShape, TailDecl, TOWARD_ATTACH, TOWARD_INFINITY
from .repn import STABLE, ZERO, Representation


def random_matrix(fs: FieldSpec, rows: int, cols: int, rng: random.Random, rank: int | None = None) -> Matrix:
    """Uniform entries, or a product of two random factors when ``rank`` is given."""
    if rank is None:
        data = tuple(tuple(fs.random_element(rng) for _ in range(cols)) for _ in range(rows))
        return Matrix(fs, rows, cols, data)
    a = random_matrix(fs, rows, rank, rng)
    b = random_matrix(fs, rank, cols, rng)
    return a @ b


def _biased_matrix(fs, rows, cols, rng):
    # low ranks make the barcode interesting; full ranks make long bars
    k = min(rows, cols)
    r = rng.choice([0, k, k, rng.randint(0, k)]) if k else 0
    return random_matrix(fs, rows, cols, rng, rank=r) if r < k else random_matrix(fs, rows, cols, rng)


def random_line(
    rng: random.Random,
    fs: FieldSpec,
    max_len: int = 10,
    max_dim: int = 5,
    equioriented: bool = False,
    ends: tuple = (ZERO, ZERO),
    min_len: int = 1,
) -> LineRep:
    n = rng.randint(min_len, max_len)
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    if equioriented:
        forward = [rng.random() < 0.5] * (n - 1)
    else:
        forward = [rng.random() < 0.5 for _ in range(n - 1)]
    maps = []
    for l, f in enumerate(forward):
        rows, cols = (dims[l + 1], dims[l]) if f else (dims[l], dims[l + 1])
        maps.append(_biased_matrix(fs, rows, cols, rng))
    left, right = ends
    return LineRep(
        fs,
        tuple(dims),
        tuple(maps),
        tuple(forward),
        left_ext=left,
        left_forward=rng.random() < 0.5,
        right_ext=right,
        right_forward=rng.random() < 0.5,
    )


def random_tree_shape(rng: random.Random, n_vertices: int, n_tails: int = 1) -> QuiverShape:
    """A random tree on ``0..n-1`` with tails hung on randomly chosen vertices."""
    verts = list(range(n_vertices))
    arrows = []
    for v in verts[1:]:
        u = rng.randrange(v)
        arrows.append((u, v) if rng.random() < 0.5 else (v, u))
    tails = []
    for _ in range(n_tails):
        t = rng.choice(verts)
        tails.append(TailDecl(t, TOWARD_INFINITY if rng.random() < 0.5 else TOWARD_ATTACH))
    return QuiverShape(tuple(verts), tuple(arrows), tuple(tails))


def random_representation(
    rng: random.Random,
    shape: QuiverShape,
    fs: FieldSpec,
    max_dim: int = 3,
    tail_ext=None,
    dims: dict | None = None,
) -> Representation:
    dims = dims or {v: rng.randint(0, max_dim) for v in shape.vertices}
    maps = {}
    for src, dst in shape.arrows:
        maps[(src, dst)] = _biased_matrix(fs, dims[dst], dims[src], rng)
    if tail_ext is None:
        tail_ext = tuple(rng.choice([ZERO, STABLE]) for _ in shape.tails)
    return Representation.build(shape, fs, dims, maps, tail_ext)


def interval_line(fs: FieldSpec, n: int, s: int, t: int, forward, ends=(ZERO, ZERO), ends_forward=(True, True)) -> LineRep:
    """The thin indicator of ``[s,t]`` on a window of length ``n`` (identities inside)."""
    dims = [1 if s <= l <= t else 0 for l in range(n)]
    maps = []
    for l in range(n - 1):
        f = forward[l]
        rows, cols = (dims[l + 1], dims[l]) if f else (dims[l], dims[l + 1])
        if rows and cols:
            maps.append(Matrix.identity(fs, 1))
        else:
            maps.append(Matrix.zeros(fs, rows, cols))
    return LineRep(
        fs, tuple(dims), tuple(maps), tuple(forward),
        left_ext=ends[0], left_forward=ends_forward[0],
        right_ext=ends[1], right_forward=ends_forward[1],
    )
