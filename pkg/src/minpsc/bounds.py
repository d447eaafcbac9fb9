"""Vertex lower bounds, obligatory edges and the padded graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InstanceTooLarge
from .graph import Instance, connected_components, norm

VALIDATE_MAX_VERTICES = 12


@dataclass(frozen=True)
class ObligatorySubgraph:
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class PaddedInstance:
    """The input graph with every obligatory component closed into a clique by zero-weight edges.

    ``padded_edges`` lists the zero-weight pairs; some of them replace an
    input edge between the same two vertices.
    """

    base: Instance
    padded_edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.base.n


def trivial_lower_bounds(instance: Instance) -> list[int]:
    """Lightest incident edge, raised to the weight of any edge leading to a leaf.

    One pass only; a vertex with several leaf neighbours takes the heaviest.
    """
    if instance.n < 2:
        raise ValueError("lower bounds need at least two vertices")
    adj = instance.adjacency
    ell = [min(w for _, w in adj[v]) for v in range(instance.n)]
    for v in range(instance.n):
        if len(adj[v]) == 1:
            u, w = adj[v][0]
            ell[v] = w
            # in a two-vertex graph both endpoints are leaves; the edge weight is their min anyway
            if w > ell[u]:
                ell[u] = w
    return ell


def min_tree_payments(instance: Instance) -> list[int]:
    """For each vertex, the least it pays over all spanning trees (by enumeration)."""
    from .exact import spanning_trees

    if instance.n > VALIDATE_MAX_VERTICES:
        raise InstanceTooLarge(f"n={instance.n} exceeds enumeration guard {VALIDATE_MAX_VERTICES}")
    best = [None] * instance.n
    for tree in spanning_trees(instance, max_vertices=None):
        pay = [0] * instance.n
        for i in tree:
            u, v, w = instance.edges[i]
            pay[u] = max(pay[u], w)
            pay[v] = max(pay[v], w)
        for v, p in enumerate(pay):
            if best[v] is None or p < best[v]:
                best[v] = p
    return [0 if b is None else b for b in best]


def validate_lower_bounds(instance: Instance, ell: Sequence[int]) -> bool:
    """Check ``ell`` against every spanning tree (guarded to small graphs)."""
    floor = min_tree_payments(instance)
    return all(ell[v] <= floor[v] for v in range(instance.n))


def obligatory_subgraph(instance: Instance, ell: Sequence[int] | Mapping[int, int]) -> ObligatorySubgraph:
    edges = tuple(
        (u, v) for u, v, w in instance.edges if min(ell[u], ell[v]) >= w
    )
    comps = connected_components(instance.n, edges)
    comp_of = [0] * instance.n
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    return ObligatorySubgraph(edges, tuple(tuple(c) for c in comps), tuple(comp_of))


def padded_graph(instance: Instance, obl: ObligatorySubgraph) -> PaddedInstance:
    """Every intra-component pair not joined by an obligatory edge gets weight 0.

    This includes pairs already joined by a heavier, non-obligatory input
    edge: the zero-weight edge shadows it.  Inside a component the
    obligatory edges connect everything at no cost above the floors, so a
    tree should never be charged for crossing a component.
    """
    obligatory = set(obl.edges)
    comp_of = obl.component_of
    adj: list[list[tuple[int, int]]] = [[] for _ in range(instance.n)]
    for u, v, w in instance.edges:
        if comp_of[u] == comp_of[v] and (u, v) not in obligatory:
            continue
        adj[u].append((v, w))
        adj[v].append((u, w))
    padded = []
    for comp in obl.components:
        for a_idx, u in enumerate(comp):
            for v in comp[a_idx + 1:]:
                e = norm(u, v)
                if e not in obligatory:
                    padded.append(e)
                    adj[u].append((v, 0))
                    adj[v].append((u, 0))
    return PaddedInstance(instance, tuple(sorted(padded)), tuple(tuple(sorted(a)) for a in adj))
