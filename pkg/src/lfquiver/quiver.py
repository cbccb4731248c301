"""Quiver shapes: a finite graph plus infinite tails of uniform orientation.

A tail is declared by the vertex it hangs off and the direction its arrows
point.  Everything else (trees, journeys, Dynkin type) is computed from the
underlying undirected graph with each tail counted as an infinite ray.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable

import networkx as nx

from .errors import Disconnected, InvalidShape

TOWARD_INFINITY = "toward_infinity"
TOWARD_ATTACH = "toward_attach"
_DIRECTIONS = (TOWARD_INFINITY, TOWARD_ATTACH)


@dataclass(frozen=True)
class TailDecl:
    attach: Hashable
    direction: str = TOWARD_INFINITY

    def __post_init__(self):
        if self.direction not in _DIRECTIONS:
            raise InvalidShape(f"tail direction must be one of {_DIRECTIONS}, got {self.direction!r}")

    @property
    def outward(self) -> bool:
        return self.direction == TOWARD_INFINITY


@dataclass(frozen=True)
class QuiverShape:
    vertices: tuple
    arrows: tuple = ()
    tails: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(self, "tails", tuple(self.tails))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidShape("duplicate vertex ids")
        vs = set(self.vertices)
        seen = set()
        for src, dst in self.arrows:
            if src not in vs or dst not in vs:
                raise InvalidShape(f"arrow {src}->{dst} uses an unknown vertex")
            if src == dst:
                raise InvalidShape(f"self-loop at {src}")
            key = frozenset((src, dst))
            if key in seen:
                raise InvalidShape(f"multiple arrows between {src} and {dst}")
            seen.add(key)
        for t in self.tails:
            if not isinstance(t, TailDecl):
                raise InvalidShape("tails must be TailDecl values")
            if t.attach not in vs:
                raise InvalidShape(f"tail attached at unknown vertex {t.attach}")

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrows)
        return g

    def neighbors(self, v) -> list:
        out = []
        for s, d in self.arrows:
            if s == v:
                out.append(d)
            elif d == v:
                out.append(s)
        return out

    def tail_count(self) -> Counter:
        return Counter(t.attach for t in self.tails)

    def degree(self, v) -> int:
        """Degree in the underlying graph, tails included."""
        return len(self.neighbors(v)) + self.tail_count()[v]

    def arrow_between(self, u, v):
        """The arrow joining ``u`` and ``v`` as ``(src, dst)``, or ``None``."""
        for a in self.arrows:
            if a == (u, v) or a == (v, u):
                return a
        return None

    def reversed(self) -> "QuiverShape":
        flip = {TOWARD_INFINITY: TOWARD_ATTACH, TOWARD_ATTACH: TOWARD_INFINITY}
        return QuiverShape(
            self.vertices,
            tuple((d, s) for s, d in self.arrows),
            tuple(TailDecl(t.attach, flip[t.direction]) for t in self.tails),
        )


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ShapeClass:
    family: str
    n: int | None = None
    reason: str | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.family != "NotDynkin"

    @property
    def is_finite(self) -> bool:
        return self.family in ("A", "D", "E")

    def __str__(self):
        if self.family in ("A", "D", "E"):
            return f"{self.family}({self.n})"
        if self.family == "NotDynkin":
            return f"NotDynkin({self.reason})"
        return self.family


def A(n):
    return ShapeClass("A", n)


def D(n):
    return ShapeClass("D", n)


def E(n):
    return ShapeClass("E", n)


AInfinity = ShapeClass("AInfinity")
AInfinityInfinity = ShapeClass("AInfinityInfinity")
DInfinity = ShapeClass("DInfinity")


def NotDynkin(reason: str) -> ShapeClass:
    return ShapeClass("NotDynkin", reason=reason)


@dataclass(frozen=True)
class ShapeAnalysis:
    is_tree: bool
    is_connected: bool
    is_finitely_branching: bool
    is_eventually_outward: bool


def analyze(q: QuiverShape) -> ShapeAnalysis:
    g = q.graph()
    connected = len(q.vertices) > 0 and nx.is_connected(g)
    acyclic = g.number_of_edges() == g.number_of_nodes() - nx.number_connected_components(g) if len(q.vertices) else True
    return ShapeAnalysis(
        is_tree=bool(acyclic),
        is_connected=connected,
        # finite core with finitely many tails is always finitely branching
        is_finitely_branching=True,
        is_eventually_outward=all(t.outward for t in q.tails),
    )


def _leg_length(q: QuiverShape, start, came_from) -> float:
    """Vertices on the leg from ``start`` away from the branch vertex."""
    length = 0
    prev, cur = came_from, start
    tails = q.tail_count()
    while True:
        length += 1
        if tails[cur]:
            return float("inf")
        nxt = [u for u in q.neighbors(cur) if u != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]


def classify(q: QuiverShape) -> ShapeClass:
    if not q.vertices or not nx.is_connected(q.graph()):
        raise Disconnected("classification needs a connected quiver")
    g = q.graph()
    if g.number_of_edges() != len(q.vertices) - 1:
        cycle = nx.find_cycle(g)
        loop = " - ".join(str(e[0]) for e in cycle)
        return NotDynkin(f"cycle found through {loop}")
    degs = {v: q.degree(v) for v in q.vertices}
    big = [v for v, d in degs.items() if d >= 4]
    if big:
        return NotDynkin(f"vertex {big[0]} has degree {degs[big[0]]}")
    branch = [v for v, d in degs.items() if d == 3]
    if len(branch) >= 2:
        return NotDynkin(f"two branch vertices {branch[0]} and {branch[1]}")
    ntails = len(q.tails)
    if not branch:
        if ntails == 0:
            return A(len(q.vertices))
        if ntails == 1:
            return AInfinity
        return AInfinityInfinity
    b = branch[0]
    legs = [_leg_length(q, u, b) for u in q.neighbors(b)]
    legs += [float("inf")] * q.tail_count()[b]
    legs.sort()
    finite = [int(x) for x in legs if x != float("inf")]
    if legs[0] == 1 and legs[1] == 1:
        if legs[2] == float("inf"):
            return DInfinity
        return D(finite[2] + 3)
    if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
        return E(int(legs[2]) + 4)
    pattern = ",".join("inf" if x == float("inf") else str(int(x)) for x in legs)
    return NotDynkin(f"leg-length pattern ({pattern}) is excluded")


# ---------------------------------------------------------------------------
# tails


@dataclass(frozen=True)
class TailChain:
    """A tail ``x_0, x_1, ...``: the finite chain ``x_0 .. attach`` then the ray."""

    index: int
    decl: TailDecl
    chain: tuple

    @property
    def root(self):
        return self.chain[0]

    def __len__(self):
        return len(self.chain)


def find_tails(q: QuiverShape) -> list[TailChain]:
    """Each declared tail extended inward through degree-2 vertices.

    The walk stops at the first vertex with another incident arrow or tail,
    and that vertex becomes ``x_0``; so for D-infinity the root is the
    branch vertex.
    """
    out = []
    for idx, t in enumerate(q.tails):
        chain = [t.attach]
        own = Counter(tt.attach for j, tt in enumerate(q.tails) if j != idx)
        while True:
            cur = chain[-1]
            nbrs = q.neighbors(cur)
            # cur may continue the tail only if its degree is exactly 2
            if own[cur] or q.degree(cur) != 2:
                break
            fresh = [u for u in nbrs if u not in chain]
            if len(fresh) != 1 or len(nbrs) != (1 if len(chain) == 1 else 2):
                break
            chain.append(fresh[0])
        out.append(TailChain(idx, t, tuple(reversed(chain))))
    return out


def path_order(q: QuiverShape) -> list:
    """Vertices of a path-shaped quiver in line order.

    Consecutive integer ids are read in increasing order.  Otherwise the walk
    starts at the tail-carrying end (if any) and then at the end listed first.
    """
    if not q.vertices:
        return []
    degs = {v: len(q.neighbors(v)) for v in q.vertices}
    if any(d > 2 for d in degs.values()) or q.graph().number_of_edges() != len(q.vertices) - 1:
        raise InvalidShape("not a path")
    ids = list(q.vertices)
    if all(isinstance(v, int) for v in ids) and sorted(ids) == list(range(min(ids), min(ids) + len(ids))):
        ordered = sorted(ids)
        if all(q.arrow_between(a, b) for a, b in zip(ordered, ordered[1:])):
            return ordered
    ends = [v for v in ids if degs[v] <= 1]
    tails = q.tail_count()
    ends.sort(key=lambda v: (0 if tails[v] else 1, ids.index(v)))
    start = ends[0]
    order = [start]
    while len(order) < len(ids):
        nxt = [u for u in q.neighbors(order[-1]) if u not in order]
        order.append(nxt[0])
    return order
