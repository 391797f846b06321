"""
Triangle hypergraphs on ordered pairs, used to schedule cycle linkages.

Vertices are the ordered pairs ``(a, b)`` of distinct elements of ``1..n``.
The triangle ``Δ(a, b, c)`` is the hyperedge ``{(a, b), (b, c), (c, a)}``; it
is invariant under rotating the triple but not under reversing it.
Acyclicity and connectivity refer to the bipartite incidence graph
(Berge-acyclicity).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import permutations

Pair = tuple[int, int]
Hyperedge = frozenset  # of Pair


@dataclass(frozen=True, order=True)
class Triangle:
    """Δ(a, b, c) stored with its smallest element first."""

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "Triangle":
        if len({a, b, c}) != 3:
            raise ValueError(f"triangle needs three distinct elements, got {(a, b, c)}")
        t = (a, b, c)
        i = t.index(min(t))
        return cls(*(t[i:] + t[:i]))

    @property
    def pairs(self) -> tuple[Pair, Pair, Pair]:
        return (self.a, self.b), (self.b, self.c), (self.c, self.a)

    @property
    def vertices(self) -> Hyperedge:
        return frozenset(self.pairs)

    def rotated_to(self, pair: Pair) -> tuple[int, int, int]:
        """The triple ``(x, y, z)`` naming this triangle with ``(y, z) == pair``."""
        t = (self.a, self.b, self.c)
        for i in range(3):
            x, y, z = t[i:] + t[:i]
            if (y, z) == pair:
                return x, y, z
        raise ValueError(f"{pair} is not a vertex of {self}")


def triangle_of(h: Iterable[Pair]) -> Triangle:
    """Recover the triangle whose vertex set is ``h``."""
    pairs = sorted(h)
    if len(pairs) != 3:
        raise ValueError(f"not a triangle: {pairs}")
    x, y = pairs[0]
    nxt = {p[0]: p[1] for p in pairs}
    if len(nxt) != 3 or nxt.get(y) is None:
        raise ValueError(f"not a triangle: {pairs}")
    t = Triangle.of(x, y, nxt[y])
    if t.vertices != frozenset(pairs):
        raise ValueError(f"not a triangle: {pairs}")
    return t


def edge_key(h: Hyperedge) -> tuple:
    """Sort key: larger hyperedges first, triangles by canonical triple."""
    if len(h) == 3:
        t = triangle_of(h)
        return (0, (t.a, t.b, t.c))
    return (-len(h), tuple(sorted(h)))


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: tuple[Hyperedge, ...]

    @classmethod
    def from_triangles(cls, n: int, triangles: Iterable[Triangle]) -> "Hypergraph":
        edges = sorted({t.vertices for t in triangles}, key=edge_key)
        return cls(n, tuple(edges))

    @property
    def vertices(self) -> list[Pair]:
        return list(permutations(range(1, self.n + 1), 2))

    def edge_set(self) -> set[Hyperedge]:
        return set(self.hyperedges)

    def sizes(self) -> list[int]:
        return sorted(len(h) for h in self.hyperedges)


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


def _incidence(h: Hypergraph) -> tuple[_UnionFind, bool]:
    verts = h.vertices
    edges = [("edge", i) for i in range(len(h.hyperedges))]
    uf = _UnionFind([*verts, *edges])
    acyclic = True
    known = set(verts)
    for e, edge in zip(edges, h.hyperedges):
        for v in edge:
            if v not in known:
                raise ValueError(f"hyperedge vertex {v} is not in [{h.n}]^(2)")
            if not uf.union(e, v):
                acyclic = False
    return uf, acyclic


def is_acyclic(h: Hypergraph) -> bool:
    return _incidence(h)[1]


def components(h: Hypergraph) -> list[frozenset[Pair]]:
    """Vertex sets of the components, ordered by their smallest pair."""
    uf, _ = _incidence(h)
    groups: dict = {}
    for v in h.vertices:
        groups.setdefault(uf.find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_connected(h: Hypergraph) -> bool:
    return len(components(h)) == 1


def _check_n(n: int, least: int) -> None:
    if n < least:
        raise ValueError(f"n must be at least {least}, got {n}")


def build_acyclic(n: int) -> Hypergraph:
    """Two-component acyclic triangle hypergraph on [n]^(2), grown one element at a time.

    Start from Δ(3,2,1) and Δ(1,2,3) on [3]; adding element ``m`` adds
    Δ(i, i+1, m) for i < m - 1 and Δ(m-1, 1, m).  The component {Δ(3,2,1)} stays
    on its own.
    """
    _check_n(n, 3)
    triangles = [Triangle.of(3, 2, 1), Triangle.of(1, 2, 3)]
    for m in range(4, n + 1):
        for i in range(1, m):
            triangles.append(Triangle.of(i, i % (m - 1) + 1, m))
    return Hypergraph.from_triangles(n, triangles)


def closed_form(n: int) -> Hypergraph:
    """All Δ(a, b, c) with ``max(a, b) < c`` and ``b ≡ a + 1 (mod c - 1)``."""
    _check_n(n, 3)
    triangles = [
        Triangle.of(a, b, c)
        for c in range(3, n + 1)
        for a in range(1, c)
        for b in range(1, c)
        if a != b and (b - a - 1) % (c - 1) == 0
    ]
    return Hypergraph.from_triangles(n, triangles)


CANONICAL_TUPLE = (2, 1, 4, 5, 3)


def relabeling(n: int, target: Sequence[int]) -> dict[int, int]:
    """Ground-element map sending (2, 1, 4, 5, 3) to ``target``, the rest in increasing order."""
    mapping = dict(zip(CANONICAL_TUPLE, target))
    rest_src = [x for x in range(1, n + 1) if x not in mapping]
    rest_dst = [x for x in range(1, n + 1) if x not in mapping.values()]
    mapping.update(zip(rest_src, rest_dst))
    return mapping


def build_connected(n: int, abcde: Sequence[int] = CANONICAL_TUPLE) -> Hypergraph:
    """Connected acyclic hypergraph with one 6-hyperedge Δ(a,b,e) ∪ Δ(c,d,e).

    For the tuple (2, 1, 4, 5, 3) this merges Δ(2,1,3) = Δ(3,2,1) with
    Δ(4,5,3) = Δ(3,4,5) in :func:`build_acyclic`; other tuples are relabelled.
    """
    _check_n(n, 5)
    abcde = tuple(int(x) for x in abcde)
    if len(abcde) != 5 or len(set(abcde)) != 5 or not all(1 <= x <= n for x in abcde):
        raise ValueError(f"need five distinct elements of 1..{n}, got {abcde}")
    base = build_acyclic(n)
    left, right = Triangle.of(2, 1, 3).vertices, Triangle.of(4, 5, 3).vertices
    merged = left | right
    rest = [h for h in base.hyperedges if h not in (left, right)]
    if len(rest) != len(base.hyperedges) - 2:
        raise AssertionError("expected Δ(3,2,1) and Δ(3,4,5) in the acyclic hypergraph")
    phi = relabeling(n, abcde)
    edges = [frozenset((phi[x], phi[y]) for x, y in h) for h in [merged, *rest]]
    return Hypergraph(n, tuple(sorted(edges, key=edge_key)))


def order_hyperedges(h: Hypergraph) -> list[Hyperedge]:
    """Breadth-first order from the 6-hyperedge over the incidence graph.

    Each hyperedge after the first meets the union of its predecessors in
    exactly one vertex.  Ties are broken by :func:`edge_key`.
    """
    big = [e for e in h.hyperedges if len(e) == 6]
    if len(big) != 1 or any(len(e) not in (3, 6) for e in h.hyperedges):
        raise ValueError("need exactly one 6-hyperedge and otherwise triangles")
    if not is_acyclic(h):
        raise ValueError("hypergraph has a cycle")
    if not is_connected(h):
        raise ValueError("hypergraph is disconnected")
    by_vertex: dict[Pair, list[Hyperedge]] = {}
    for e in sorted(h.hyperedges, key=edge_key):
        for v in e:
            by_vertex.setdefault(v, []).append(e)
    order = [big[0]]
    placed = {big[0]}
    queue = deque(order)
    while queue:
        e = queue.popleft()
        for v in sorted(e):
            for f in by_vertex[v]:
                if f not in placed:
                    placed.add(f)
                    order.append(f)
                    queue.append(f)
    return order


def shared_vertices(order: Sequence[Hyperedge]) -> list[Pair | None]:
    """For each hyperedge in ``order``, the single vertex it shares with earlier ones."""
    seen: set[Pair] = set()
    out: list[Pair | None] = []
    for i, e in enumerate(order):
        common = e & seen
        if i == 0:
            out.append(None)
        elif len(common) != 1:
            raise ValueError(f"hyperedge {sorted(e)} meets its predecessors in {len(common)} vertices")
        else:
            out.append(next(iter(common)))
        seen |= e
    return out


def dump(edges: Iterable[Hyperedge]) -> str:
    """One hyperedge per line, pairs sorted: ``a,b ; c,d ; e,f``."""
    return "".join(
        " ; ".join(f"{x},{y}" for x, y in sorted(e)) + "\n" for e in edges
    )


def dump_hypergraph(h: Hypergraph) -> str:
    return dump(sorted(h.hyperedges, key=edge_key))
