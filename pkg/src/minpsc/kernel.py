"""Data reduction to a kernel whose size is linear in the feedback edge number ``g``.

The reductions work on annotated instances: every vertex carries a floor
``ell(v)`` it pays even without selected edges, and an offset ``d`` records
cost already committed, so that ``opt(original) = opt(current) + d``.

Pipeline: prune degree-one vertices, shorten long chains of degree-two
vertices to a constant-size representative, then turn every floor into a
pendant edge so the result is a plain instance again.  Every step is
logged so a solution of the reduced instance can be mapped back.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bounds import trivial_lower_bounds
from .color_coding import CcConfig, solve_minpsc_cc
from .errors import GuardExceeded, InconsistentLog, IndexOutOfRange, NotACycle, PathTooShort
from .exact import MAX_COTREE_EVALUATIONS, cotree_evaluations, solve_cotree, solve_exact_dp
from .graph import Instance, Solution, cost, norm

# Chains with at least this many edges are replaced.  Keeping at most
# six inner vertices per chain is what the size bounds need.
MIN_RR2_LENGTH = 8
EXACT_DP_MAX_VERTICES = 16


@dataclass
class AnnotatedInstance:
    adj: dict[int, dict[int, int]]
    ell: dict[int, int]
    offset: int = 0
    next_id: int = 0
    log: list = field(default_factory=list)

    @classmethod
    def from_instance(cls, instance: Instance, ell: Sequence[int] | None = None) -> "AnnotatedInstance":
        adj = {v: {u: w for u, w in instance.adjacency[v]} for v in range(instance.n)}
        floors = {v: (ell[v] if ell is not None else 0) for v in range(instance.n)}
        return cls(adj, floors, 0, instance.n, [])

    def copy(self) -> "AnnotatedInstance":
        return copy.deepcopy(self)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj.values()) // 2

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, w) for u, nb in self.adj.items() for v, w in nb.items() if u < v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def new_vertex(self, floor: int) -> int:
        v = self.next_id
        self.next_id += 1
        self.adj[v] = {}
        self.ell[v] = floor
        return v

    def add_edge(self, u: int, v: int, w: int) -> None:
        self.adj[u][v] = w
        self.adj[v][u] = w

    def remove_vertex(self, v: int) -> None:
        for u in self.adj.pop(v):
            del self.adj[u][v]
        del self.ell[v]


def annotated_cost(ai: AnnotatedInstance, edges: Iterable[Sequence[int]]) -> int:
    """Objective of an edge selection: every vertex pays max(floor, heaviest selected edge)."""
    pay = dict(ai.ell)
    for e in edges:
        u, v = e[0], e[1]
        w = ai.adj[u][v]
        pay[u] = max(pay[u], w)
        pay[v] = max(pay[v], w)
    return sum(pay.values())


# --- log records -----------------------------------------------------------

@dataclass(frozen=True)
class Rr1Record:
    removed: int
    neighbor: int


@dataclass(frozen=True)
class CycleRecord:
    kept: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Rr2Record:
    path: tuple[int, ...]
    rep: tuple[int, ...]
    # rep edge k copies the weight of path edge source[k]
    source: tuple[int, ...]


@dataclass(frozen=True)
class PendantRecord:
    pendants: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RelabelRecord:
    original: tuple[int, ...]


# --- degree-one vertices ---------------------------------------------------

def _finalize_single(ai: AnnotatedInstance) -> None:
    (v,) = ai.adj
    ai.offset += ai.ell[v]
    ai.ell[v] = 0


def apply_rr1(ai: AnnotatedInstance) -> AnnotatedInstance:
    """Remove degree-one vertices until none is left, charging them to the offset."""
    work = [v for v in ai.adj if len(ai.adj[v]) == 1]
    while work:
        v = work.pop()
        if v not in ai.adj or len(ai.adj[v]) != 1:
            continue
        (u, w), = ai.adj[v].items()
        ai.offset += max(w, ai.ell[v])
        ai.ell[u] = max(ai.ell[u], w)
        ai.remove_vertex(v)
        ai.log.append(Rr1Record(v, u))
        if len(ai.adj[u]) == 1:
            work.append(u)
    if len(ai.adj) == 1:
        _finalize_single(ai)
    return ai


# --- cycles ----------------------------------------------------------------

def _cycle_order(ai: AnnotatedInstance) -> list[int]:
    if ai.n < 3 or any(len(nb) != 2 for nb in ai.adj.values()):
        raise NotACycle("every vertex of a cycle has degree two")
    start = min(ai.adj)
    order = [start]
    prev, cur = start, min(ai.adj[start])
    while cur != start:
        order.append(cur)
        prev, cur = cur, next(u for u in ai.adj[cur] if u != prev)
    if len(order) != ai.n:
        raise NotACycle("graph is a union of several cycles")
    return order


def solve_cycle(ai: AnnotatedInstance) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Best annotated cost on a cycle: drop one edge, or keep them all."""
    order = _cycle_order(ai)
    ring = [norm(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
    best = None
    for drop in list(range(len(ring))) + [None]:
        kept = tuple(sorted(e for i, e in enumerate(ring) if i != drop))
        value = annotated_cost(ai, kept)
        if best is None or value < best[0]:
            best = (value, kept)
    return best


def _collapse_cycle(ai: AnnotatedInstance) -> None:
    value, kept = solve_cycle(ai)
    ai.offset += value
    ai.log.append(CycleRecord(kept))
    keep = min(ai.adj)
    for v in sorted(ai.adj):
        if v != keep:
            ai.remove_vertex(v)
    ai.ell[keep] = 0


# --- long degree-two paths -------------------------------------------------

@dataclass(frozen=True)
class DegreeTwoPath:
    vertices: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.vertices) - 1


def degree_two_paths(ai: AnnotatedInstance) -> list[DegreeTwoPath]:
    """Maximal paths whose inner vertices have degree two and whose ends have degree at least three."""
    paths = []
    seen: set[tuple[int, int]] = set()
    for b in sorted(ai.adj):
        if len(ai.adj[b]) < 3:
            continue
        for first in sorted(ai.adj[b]):
            if norm(b, first) in seen:
                continue
            verts = [b, first]
            seen.add(norm(b, first))
            prev, cur = b, first
            while len(ai.adj[cur]) == 2:
                nxt = next(u for u in ai.adj[cur] if u != prev)
                seen.add(norm(cur, nxt))
                verts.append(nxt)
                prev, cur = cur, nxt
            paths.append(DegreeTwoPath(tuple(verts)))
    return paths


def _w(ai: AnnotatedInstance, path: DegreeTwoPath, j: int) -> int:
    vs = path.vertices
    return ai.adj[vs[j]][vs[j + 1]]


def beta(ai: AnnotatedInstance, path: DegreeTwoPath, j: int) -> int:
    """Saving at the two endpoints of inner edge ``j`` when it is left out."""
    if not 1 <= j <= path.h - 2:
        raise IndexOutOfRange(f"inner edge index must lie in 1..{path.h - 2}, got {j}")
    vs = path.vertices
    wj = _w(ai, path, j)
    left = max(0, wj - max(ai.ell[vs[j]], _w(ai, path, j - 1)))
    right = max(0, wj - max(ai.ell[vs[j + 1]], _w(ai, path, j + 1)))
    return left + right


def omission_cost(ai: AnnotatedInstance, path: DegreeTwoPath, j: int) -> int:
    """What the inner vertices pay when path edge ``j`` is the only one left out."""
    vs = path.vertices
    total = 0
    for k in range(1, path.h):
        pay = ai.ell[vs[k]]
        if k - 1 != j:
            pay = max(pay, _w(ai, path, k - 1))
        if k != j:
            pay = max(pay, _w(ai, path, k))
        total += pay
    return total


@dataclass(frozen=True)
class Representative:
    """Replacement path.  Entries of ``vertices`` are path indices, or ``"u1"``/``"u2"`` for new vertices."""

    i: int
    vertices: tuple
    weights: tuple[int, ...]
    source: tuple[int, ...]
    new_ell: dict
    adj: int


def most_beneficial_index(ai: AnnotatedInstance, path: DegreeTwoPath) -> int:
    h = path.h
    scores = {j: beta(ai, path, j) for j in range(1, h - 1)}
    interior = max(scores[j] for j in range(2, h - 2))
    if scores[1] > interior or scores[h - 2] > interior:
        return 1 if scores[1] >= scores[h - 2] else h - 2
    return min(j for j in range(2, h - 2) if scores[j] == interior)


def representative(ai: AnnotatedInstance, path: DegreeTwoPath) -> Representative:
    h = path.h
    if h < MIN_RR2_LENGTH:
        raise PathTooShort(f"path has {h} edges, replacement needs at least {MIN_RR2_LENGTH}")
    i = most_beneficial_index(ai, path)
    if i == 1:
        layout = [0, 1, 2, "u2", h - 1, h]
        source = [0, 1, 2, h - 2, h - 1]
    elif i == h - 2:
        layout = [0, 1, "u1", h - 2, h - 1, h]
        source = [0, 1, h - 3, h - 2, h - 1]
    else:
        layout = [0, 1, "u1", i, i + 1, "u2", h - 1, h]
        source = [0, 1, i - 1, i, i + 1, h - 2, h - 1]
    weights = [_w(ai, path, j) for j in source]
    new_ell = {}
    for k, x in enumerate(layout):
        if isinstance(x, str):
            new_ell[x] = max(weights[k - 1], weights[k])
    vs = path.vertices
    kept = {x for x in layout if not isinstance(x, str)}
    deleted = sum(
        max(ai.ell[vs[k]], _w(ai, path, k - 1), _w(ai, path, k)) for k in range(1, h) if k not in kept
    )
    return Representative(i, tuple(layout), tuple(weights), tuple(source), new_ell, deleted - sum(new_ell.values()))


def _replace_path(ai: AnnotatedInstance, path: DegreeTwoPath) -> None:
    rep = representative(ai, path)
    vs = path.vertices
    for k in range(1, path.h):
        if k not in rep.vertices:
            ai.remove_vertex(vs[k])
    # the chain is now broken at the deleted vertices; drop its remaining inner edges too
    for k in range(path.h):
        a, b = vs[k], vs[k + 1]
        if a in ai.adj and b in ai.adj[a]:
            del ai.adj[a][b]
            del ai.adj[b][a]
    ids = [ai.new_vertex(rep.new_ell[x]) if isinstance(x, str) else vs[x] for x in rep.vertices]
    for k, w in enumerate(rep.weights):
        ai.add_edge(ids[k], ids[k + 1], w)
    ai.offset += rep.adj
    ai.log.append(Rr2Record(vs, tuple(ids), rep.source))


def apply_rr2(ai: AnnotatedInstance) -> AnnotatedInstance:
    """Replace every degree-two path with at least ``MIN_RR2_LENGTH`` edges by its representative.

    Replacements keep every degree, so one sweep leaves no long path behind.
    """
    for path in degree_two_paths(ai):
        if path.h >= MIN_RR2_LENGTH:
            _replace_path(ai, path)
    return ai


# --- back to plain instances -----------------------------------------------

def deannotate(ai: AnnotatedInstance) -> tuple[Instance, int]:
    """Trade every positive floor for a pendant edge of that weight; returns the relabelled instance and the offset change."""
    pendants = []
    delta = 0
    for v in sorted(ai.adj):
        f = ai.ell[v]
        if f > 0:
            p = ai.new_vertex(0)
            ai.add_edge(v, p, f)
            ai.ell[v] = 0
            delta -= f
            pendants.append((p, v))
    ai.offset += delta
    ai.log.append(PendantRecord(tuple(pendants)))
    order = tuple(sorted(ai.adj))
    dense = {v: k for k, v in enumerate(order)}
    ai.log.append(RelabelRecord(order))
    inst = Instance(len(order), [(dense[u], dense[v], w) for u, v, w in ai.edges()])
    return inst, delta


@dataclass
class Kernel:
    reduced: Instance
    d: int
    log: list
    g: int
    intermediate_n: int
    intermediate_m: int
    cycle: bool

    @property
    def vertex_bound(self) -> int:
        return 40 * self.g - 26

    @property
    def edge_bound(self) -> int:
        return 41 * self.g - 27


def kernelize(instance: Instance) -> Kernel:
    ai = AnnotatedInstance.from_instance(instance)
    g = instance.m - instance.n + 1
    apply_rr1(ai)
    is_cycle = False
    if ai.n > 1:
        if all(len(nb) == 2 for nb in ai.adj.values()):
            is_cycle = True
            _collapse_cycle(ai)
        else:
            apply_rr2(ai)
    mid_n, mid_m = ai.n, ai.m
    reduced, _ = deannotate(ai)
    return Kernel(reduced, ai.offset, ai.log, g, mid_n, mid_m, is_cycle)


def lift(log: Sequence, reduced_solution: Solution | Iterable[Sequence[int]], original: Instance) -> Solution:
    """Map a solution of the reduced instance back to the original instance."""
    edges_in = reduced_solution.edges if isinstance(reduced_solution, Solution) else reduced_solution
    current: set[tuple[int, int]] = {norm(e[0], e[1]) for e in edges_in}
    for rec in reversed(log):
        if isinstance(rec, RelabelRecord):
            try:
                current = {norm(rec.original[u], rec.original[v]) for u, v in current}
            except IndexError:
                raise InconsistentLog("solution mentions a vertex outside the reduced instance") from None
        elif isinstance(rec, PendantRecord):
            drop = {norm(p, v) for p, v in rec.pendants}
            current -= drop
        elif isinstance(rec, Rr2Record):
            rep_edges = [norm(rec.rep[k], rec.rep[k + 1]) for k in range(len(rec.rep) - 1)]
            missing = [k for k, e in enumerate(rep_edges) if e not in current]
            if len(missing) > 1:
                raise InconsistentLog("a replaced path lost more than one edge")
            current -= set(rep_edges)
            skip = rec.source[missing[0]] if missing else None
            p = rec.path
            current |= {norm(p[k], p[k + 1]) for k in range(len(p) - 1) if k != skip}
        elif isinstance(rec, CycleRecord):
            current |= set(rec.kept)
        elif isinstance(rec, Rr1Record):
            current.add(norm(rec.removed, rec.neighbor))
        else:
            raise InconsistentLog(f"unknown log record {rec!r}")
    try:
        return cost(original, current)
    except ValueError as exc:
        raise InconsistentLog(str(exc)) from exc


def solve_reduced(reduced: Instance, solver: str = "auto") -> tuple[Solution, str]:
    """Exact solution of a kernel; ``auto`` picks the cheapest applicable method."""
    if reduced.n == 1:
        return Solution((), (0,), 0), "trivial"
    if solver == "exact" or (solver == "auto" and reduced.n <= EXACT_DP_MAX_VERTICES):
        return solve_exact_dp(reduced), "exact"
    if solver == "cotree" or (solver == "auto" and cotree_evaluations(reduced) <= MAX_COTREE_EVALUATIONS):
        return solve_cotree(reduced, max_evaluations=None if solver == "cotree" else MAX_COTREE_EVALUATIONS), "cotree"
    if solver in ("cc", "auto"):
        return solve_minpsc_cc(reduced, trivial_lower_bounds(reduced), CcConfig(mode="deterministic")), "cc"
    raise GuardExceeded(f"no solver applies to the reduced instance (solver={solver!r})")


def solve_via_kernel(instance: Instance, solver: str = "auto") -> Solution:
    kern = kernelize(instance)
    reduced_sol, _ = solve_reduced(kern.reduced, solver)
    lifted = lift(kern.log, reduced_sol, instance)
    if lifted.total_cost != reduced_sol.total_cost + kern.d:
        raise InconsistentLog(
            f"lifted cost {lifted.total_cost} differs from reduced {reduced_sol.total_cost} + d {kern.d}"
        )
    return lifted
