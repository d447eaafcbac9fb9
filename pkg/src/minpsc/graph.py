"""Weighted graph model, the power cost function and spanning-tree basics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DisconnectedSelection, InvalidInstance

Edge = tuple[int, int, int]


def norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class DisjointSet:
    """Union-find over 0..n-1 with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


@dataclass(frozen=True)
class Instance:
    """A connected, simple, undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v, w)`` with ``u < v``; the position of an
    edge in ``edges`` is its edge id and drives all tie-breaking.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )
    _index: dict = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]], *, check_connected: bool = True):
        if n < 1:
            raise InvalidInstance("an instance needs at least one vertex")
        normed: list[Edge] = []
        index: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v, w = (int(x) for x in e)
            if u == v:
                raise InvalidInstance(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstance(f"edge ({u}, {v}) out of range for n={n}")
            if w < 1:
                raise InvalidInstance(f"edge ({u}, {v}) has non-positive weight {w}")
            key = norm(u, v)
            if key in index:
                raise InvalidInstance(f"parallel edge {key}")
            index[key] = len(normed)
            normed.append((key[0], key[1], w))
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, w in normed:
            adj[u].append((v, w))
            adj[v].append((u, w))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(normed))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_index", index)
        if check_connected and len(connected_components(n, normed)) != 1:
            raise InvalidInstance("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> int:
        try:
            return self.edges[self._index[norm(u, v)]][2]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return norm(u, v) in self._index

    def edge_id(self, u: int, v: int) -> int:
        return self._index[norm(u, v)]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class Solution:
    edges: tuple[tuple[int, int], ...]
    per_vertex_cost: tuple[int, ...]
    total_cost: int

    def sort_key(self) -> tuple:
        return (self.total_cost, self.edges)


@dataclass(frozen=True)
class FeedbackEdgeInfo:
    g: int
    feedback_edges: tuple[tuple[int, int], ...]


def _selected_pairs(instance: Instance, edges: Iterable) -> list[tuple[int, int]]:
    pairs = set()
    for e in edges:
        u, v = norm(int(e[0]), int(e[1]))
        if not instance.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the instance")
        pairs.add((u, v))
    return sorted(pairs)


def vertex_costs(instance: Instance, edges: Iterable) -> list[int]:
    pay = [0] * instance.n
    for u, v in _selected_pairs(instance, edges):
        w = instance.weight(u, v)
        if w > pay[u]:
            pay[u] = w
        if w > pay[v]:
            pay[v] = w
    return pay


def cost(instance: Instance, edges: Iterable) -> Solution:
    """Evaluate a connected spanning edge selection.

    Every vertex pays its heaviest selected incident edge.  Raises
    :class:`DisconnectedSelection` if the selection does not connect all
    vertices.
    """
    pairs = _selected_pairs(instance, edges)
    if len(connected_components(instance.n, pairs)) != 1:
        raise DisconnectedSelection("selected edges do not connect all vertices")
    pay = vertex_costs(instance, pairs)
    return Solution(tuple(pairs), tuple(pay), sum(pay))


def is_connected_spanning(instance: Instance, edges: Iterable) -> bool:
    pairs = _selected_pairs(instance, edges)
    return len(connected_components(instance.n, pairs)) == 1


def connected_components(vertices, edges: Iterable[Sequence[int]]) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex.

    ``vertices`` is either a vertex count or an iterable of vertex ids.
    """
    if isinstance(vertices, int):
        ids = list(range(vertices))
    else:
        ids = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(ids)}
    ds = DisjointSet(len(ids))
    for e in edges:
        ds.union(pos[e[0]], pos[e[1]])
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(ids):
        groups.setdefault(ds.find(i), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def feedback_edge_info(instance: Instance) -> FeedbackEdgeInfo:
    """Non-tree edges of a BFS spanning tree rooted at vertex 0."""
    seen = [False] * instance.n
    tree = set()
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, _ in instance.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                tree.add(norm(u, v))
                queue.append(v)
    feedback = tuple((u, v) for u, v, _ in instance.edges if (u, v) not in tree)
    return FeedbackEdgeInfo(len(feedback), feedback)


def minimum_spanning_tree(instance: Instance) -> Solution:
    """Kruskal, ties broken by edge id."""
    order = sorted(range(instance.m), key=lambda i: (instance.edges[i][2], i))
    ds = DisjointSet(instance.n)
    chosen = []
    for i in order:
        u, v, _ = instance.edges[i]
        if ds.union(u, v):
            chosen.append((u, v))
    return cost(instance, chosen)


def relabel(instance: Instance, perm: Sequence[int]) -> Instance:
    """Rename vertex ``v`` to ``perm[v]``."""
    return Instance(instance.n, [(perm[u], perm[v], w) for u, v, w in instance.edges])
