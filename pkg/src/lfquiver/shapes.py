"""Named quiver shapes used by the roots tools and the command line.

``A<n>``, ``D<n>``, ``E6``/``E7``/``E8`` are the Dynkin graphs on vertices
``1..n`` with arrows ``i -> j`` for ``i < j``.  ``C<n>`` is an oriented
cycle, ``Dt<n>`` the extended graph of type D with ``n+1`` vertices,
``Et6``/``Et7``/``Et8`` the extended E graphs.  ``Ainf<n>``, ``Ainfinf<n>``
and ``Dinf<n>`` are finite windows carrying one, two or one outward tails.
"""
from __future__ import annotations

import re

from .errors import InvalidShape
from .quiver import QuiverShape, TailDecl


def _orient(edges):
    return tuple((min(u, v), max(u, v)) for u, v in edges)


def path(n: int, tails: int = 0) -> QuiverShape:
    verts = tuple(range(1, n + 1))
    arrows = _orient((i, i + 1) for i in range(1, n))
    ts = []
    if tails >= 1:
        ts.append(TailDecl(n))
    if tails >= 2:
        ts.insert(0, TailDecl(1, "toward_attach"))
    return QuiverShape(verts, arrows, tuple(ts))


def dynkin_d(n: int, tail: bool = False) -> QuiverShape:
    """Path ``1..n-1`` with ``n`` hung on ``n-2``; a tail continues from vertex 1."""
    if n < 4:
        raise InvalidShape("D_n needs n >= 4")
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    ts = (TailDecl(1, "toward_attach"),) if tail else ()
    return QuiverShape(tuple(range(1, n + 1)), _orient(edges), ts)


def dynkin_e(n: int) -> QuiverShape:
    if n not in (6, 7, 8):
        raise InvalidShape("E_n exists for n = 6, 7, 8")
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    return QuiverShape(tuple(range(1, n + 1)), _orient(edges))


def cycle(n: int) -> QuiverShape:
    if n < 3:
        raise InvalidShape("cycles need at least 3 vertices")
    arrows = tuple((i, i % n + 1) for i in range(1, n + 1))
    return QuiverShape(tuple(range(1, n + 1)), arrows)


def extended_d(n: int) -> QuiverShape:
    """``n+1`` vertices: path ``1..n-1`` with extra leaves ``n`` on 2 and ``n+1`` on ``n-2``."""
    if n < 4:
        raise InvalidShape("extended D_n needs n >= 4")
    if n == 4:
        return QuiverShape((1, 2, 3, 4, 5), ((1, 3), (2, 3), (3, 4), (3, 5)))
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(2, n), (n - 2, n + 1)]
    return QuiverShape(tuple(range(1, n + 2)), _orient(edges))


def extended_e(n: int) -> QuiverShape:
    legs = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[n]
    return star(legs)


def star(legs) -> QuiverShape:
    """Centre ``0`` with legs of the given lengths; leg ``k`` uses ``(k, 1), (k, 2), ...``."""
    verts = [0]
    edges = []
    for k, length in enumerate(legs):
        prev = 0
        for i in range(1, length + 1):
            v = (k, i)
            verts.append(v)
            edges.append((prev, v))
            prev = v
    return QuiverShape(tuple(verts), tuple(edges))


def named_shape(name: str) -> QuiverShape:
    m = re.fullmatch(r"(Ainfinf|Ainf|Dinf|Dt|Et|A|D|E|C)(\d+)", name.strip())
    if not m:
        raise InvalidShape(f"unknown shape name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise InvalidShape("shape size must be positive")
    if kind == "A":
        return path(n)
    if kind == "Ainf":
        return path(n, tails=1)
    if kind == "Ainfinf":
        return path(n, tails=2)
    if kind == "D":
        return dynkin_d(n)
    if kind == "Dinf":
        return dynkin_d(n, tail=True)
    if kind == "E":
        return dynkin_e(n)
    if kind == "C":
        return cycle(n)
    if kind == "Dt":
        return extended_d(n)
    return extended_e(n)
