"""Exact reference solvers.

* ``solve_exact_dp``: the colourful-subgraph DP with every vertex its own colour.
* ``brute_force_tree``: enumerate all spanning trees.
* ``brute_force_connector``: extend the obligatory edges by every possible set of connectors.
* ``solve_cotree``: choose which edge to drop from each of ``g`` chains; fast when ``g`` is small.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

from .bounds import obligatory_subgraph
from .errors import TooLarge
from .graph import DisjointSet, Instance, Solution, cost
from .pccs import MAX_COLORS, PccsSolver

BRUTE_FORCE_MAX_VERTICES = 10
MAX_TREES = 2_000_000
MAX_CONNECTOR_SETS = 2_000_000
MAX_COTREE_EVALUATIONS = 2_000_000


def _single_vertex() -> Solution:
    return Solution((), (0,), 0)


def solve_exact_dp(instance: Instance, *, max_colors: int = MAX_COLORS, backend: str | None = None) -> Solution:
    """Optimal solution via the DP over all vertex subsets."""
    if instance.n == 1:
        return _single_vertex()
    solver = PccsSolver(instance, [0] * instance.n, max_colors=max_colors, backend=backend)
    res = solver.solve(range(instance.n), range(instance.n))
    sol = cost(instance, res.edges)
    assert sol.total_cost == res.value
    return sol


def count_spanning_trees(instance: Instance) -> int:
    """Kirchhoff's theorem with exact rational elimination."""
    n = instance.n
    if n == 1:
        return 1
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, v, _ in instance.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    a = [row[1:] for row in lap[1:]]
    size = n - 1
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, size):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, size):
                    a[r][c] -= f * a[col][c]
    return int(det)


class _RollbackDSU:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.history: list[tuple[int, int] | None] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        bumped = self.rank[ra] == self.rank[rb]
        if bumped:
            self.rank[ra] += 1
        self.history.append((rb, ra if bumped else -1))
        return True

    def undo(self) -> None:
        rb, ra = self.history.pop()
        self.parent[rb] = rb
        if ra >= 0:
            self.rank[ra] -= 1


def spanning_trees(instance: Instance, *, max_vertices: int | None = BRUTE_FORCE_MAX_VERTICES) -> Iterator[tuple[int, ...]]:
    """Yield every spanning tree as a tuple of edge ids, in lexicographic order.

    Each edge is either taken (if it joins two current components) or
    skipped (if the remaining edges can still connect everything).
    """
    n, m = instance.n, instance.m
    if max_vertices is not None and n > max_vertices:
        raise TooLarge(f"n={n} exceeds the enumeration guard {max_vertices}")
    if n == 1:
        yield ()
        return
    edges = instance.edges
    dsu = _RollbackDSU(n)
    chosen: list[int] = []

    def completable(start: int) -> bool:
        probe = DisjointSet(n)
        for v in range(n):
            probe.union(v, dsu.find(v))
        for i in range(start, m):
            probe.union(edges[i][0], edges[i][1])
        return probe.count == 1

    def rec(i: int, comps: int) -> Iterator[tuple[int, ...]]:
        if comps == 1:
            yield tuple(chosen)
            return
        if m - i < comps - 1:
            return
        u, v, _ = edges[i]
        if dsu.union(u, v):
            chosen.append(i)
            yield from rec(i + 1, comps - 1)
            chosen.pop()
            dsu.undo()
        if completable(i + 1):
            yield from rec(i + 1, comps)

    yield from rec(0, n)


def brute_force_tree(instance: Instance, *, max_vertices: int | None = BRUTE_FORCE_MAX_VERTICES,
                     max_trees: int | None = MAX_TREES) -> Solution:
    """Cheapest spanning tree under the power objective, by full enumeration."""
    if max_vertices is not None and instance.n > max_vertices:
        raise TooLarge(f"n={instance.n} exceeds the enumeration guard {max_vertices}")
    if max_trees is not None:
        count = count_spanning_trees(instance)
        if count > max_trees:
            raise TooLarge(f"{count} spanning trees exceed the budget of {max_trees}")
    if instance.n == 1:
        return _single_vertex()
    edges = instance.edges
    best_val, best_tree = None, None
    pay = [0] * instance.n
    for tree in spanning_trees(instance, max_vertices=None):
        for v in range(instance.n):
            pay[v] = 0
        for i in tree:
            u, v, w = edges[i]
            if w > pay[u]:
                pay[u] = w
            if w > pay[v]:
                pay[v] = w
        total = sum(pay)
        if best_val is None or total < best_val:
            best_val, best_tree = total, tree
    return cost(instance, [edges[i][:2] for i in best_tree])


def brute_force_connector(instance: Instance, ell: Sequence[int], *,
                          max_sets: int | None = MAX_CONNECTOR_SETS) -> Solution:
    """Obligatory edges plus the best set of ``c - 1`` connecting edges.

    Any optimum can be thinned to the obligatory edges plus a spanning tree
    of the component graph, so trying every ``(c-1)``-subset of the other
    edges is exhaustive.  Each subset fixes the chosen endpoints; subsets
    are the canonical form of the endpoint choices.
    """
    obl = obligatory_subgraph(instance, ell)
    if obl.c == 1:
        return cost(instance, obl.edges)
    obligatory = set(obl.edges)
    pool = [(u, v, w) for u, v, w in instance.edges if (u, v) not in obligatory]
    need = obl.c - 1
    total = math.comb(len(pool), need)
    if max_sets is not None and total > max_sets:
        raise TooLarge(f"{total} connector sets exceed the budget of {max_sets}")
    base = [0] * instance.n
    for u, v in obl.edges:
        w = instance.weight(u, v)
        base[u] = max(base[u], w)
        base[v] = max(base[v], w)
    base_total = sum(base)
    comp_of = obl.component_of
    best: tuple[int, tuple] | None = None
    for combo in itertools.combinations(pool, need):
        ds = DisjointSet(obl.c)
        ok = True
        for u, v, _ in combo:
            if not ds.union(comp_of[u], comp_of[v]):
                ok = False
                break
        if not ok:
            continue
        raised: dict[int, int] = {}
        for u, v, w in combo:
            for x in (u, v):
                if w > raised.get(x, base[x]):
                    raised[x] = w
        total_cost = base_total + sum(p - base[x] for x, p in raised.items())
        if best is None or total_cost < best[0]:
            best = (total_cost, combo)
    return cost(instance, list(obl.edges) + [e[:2] for e in best[1]])


# --- co-tree enumeration ---------------------------------------------------

def _two_core(instance: Instance) -> list[bool]:
    deg = [instance.degree(v) for v in range(instance.n)]
    alive = [True] * instance.n
    stack = [v for v in range(instance.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u, _ in instance.adjacency[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
    return alive


def _chains(instance: Instance, core: list[bool]) -> tuple[list[int], list[tuple[int, int, list[int]]]]:
    """Branch vertices and the chains between them as (start, end, edge ids)."""
    adj = [[(u, instance.edge_id(v, u)) for u, _ in instance.adjacency[v] if core[u]] if core[v] else []
           for v in range(instance.n)]
    branch = [v for v in range(instance.n) if core[v] and len(adj[v]) >= 3]
    if not branch:
        start = next((v for v in range(instance.n) if core[v]), None)
        if start is None:
            return [], []
        branch_set = {start}
        branch = [start]
    else:
        branch_set = set(branch)
    used: set[int] = set()
    chains = []
    for b in branch:
        for u, eid in adj[b]:
            if eid in used:
                continue
            ids = [eid]
            used.add(eid)
            prev, cur = b, u
            while cur not in branch_set:
                nxt = next((x, e) for x, e in adj[cur] if e not in used)
                ids.append(nxt[1])
                used.add(nxt[1])
                prev, cur = cur, nxt[0]
            chains.append((b, cur, ids))
    return branch, chains


def solve_cotree(instance: Instance, *, max_evaluations: int | None = MAX_COTREE_EVALUATIONS) -> Solution:
    """Exact solver enumerating which ``g`` edges a spanning tree leaves out.

    Edges outside the 2-core belong to every spanning tree.  Inside the
    core, a spanning tree drops exactly one edge from each of ``g`` chains
    whose complement is a spanning tree of the branch multigraph.
    """
    if instance.n == 1:
        return _single_vertex()
    if instance.m == instance.n - 1:
        return cost(instance, [e[:2] for e in instance.edges])
    chains, subsets = _cotree_candidates(instance)
    evaluations = sum(math.prod(len(chains[i][2]) for i in drop) for drop in subsets)
    if max_evaluations is not None and evaluations > max_evaluations:
        raise TooLarge(f"{evaluations} co-tree candidates exceed the budget of {max_evaluations}")

    edges = instance.edges
    incident = [sorted(((w, instance.edge_id(v, u)) for u, w in instance.adjacency[v]), reverse=True)
                for v in range(instance.n)]
    full = [lst[0][0] for lst in incident]
    full_total = sum(full)

    def pay_without(v: int, removed: set[int]) -> int:
        for w, eid in incident[v]:
            if eid not in removed:
                return w
        return 0

    best: tuple[int, tuple[int, ...]] | None = None
    for drop in subsets:
        for pick in itertools.product(*(chains[i][2] for i in drop)):
            removed = set(pick)
            touched = {x for eid in pick for x in edges[eid][:2]}
            total = full_total - sum(full[v] - pay_without(v, removed) for v in touched)
            if best is None or total < best[0]:
                best = (total, pick)
    removed = set(best[1])
    return cost(instance, [e[:2] for i, e in enumerate(edges) if i not in removed])


def _cotree_candidates(instance: Instance):
    core = _two_core(instance)
    branch, chains = _chains(instance, core)
    g = instance.m - instance.n + 1
    bindex = {b: i for i, b in enumerate(branch)}
    subsets = []
    for drop in itertools.combinations(range(len(chains)), g):
        dropped = set(drop)
        ds = DisjointSet(len(branch))
        for i, (a, b, _) in enumerate(chains):
            if i not in dropped:
                ds.union(bindex[a], bindex[b])
        if ds.count == 1:
            subsets.append(drop)
    return chains, subsets


def cotree_evaluations(instance: Instance) -> int:
    """Number of candidates ``solve_cotree`` would evaluate."""
    if instance.n == 1 or instance.m == instance.n - 1:
        return 1
    chains, subsets = _cotree_candidates(instance)
    return sum(math.prod(len(chains[i][2]) for i in drop) for drop in subsets)
