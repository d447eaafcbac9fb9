"""Min-power colorful connected subgraph (MinPCCS) by subset dynamic programming.

Table entry ``D[v, q, C']`` is the cheapest tree whose vertices carry the
colours ``C'`` bijectively, contains ``v``, keeps every edge at ``v`` no
heavier than ``{v, q}``, and charges ``v`` exactly ``max(floor(v), w(v, q))``.
The anchor ``q = v`` stands for weight 0 and covers single-vertex trees.

Two recurrences fill the table over growing colour sets: splitting the tree
at ``v`` into two subtrees, or attaching ``v`` as a leaf to a smaller tree
rooted at a neighbour.  The fill loop runs in a compiled extension when it
is importable and in pure Python otherwise.
"""

from __future__ import annotations

import bisect
import os
from dataclasses import dataclass
from typing import Collection, Sequence

import numpy as np

from . import _pccs_py
from .errors import CorruptTable, TooLarge, TooManyColors
from .graph import norm

INF = _pccs_py.INF
MAX_COLORS = 25
MAX_TABLE_BYTES = 3 * 2**30

try:
    from . import _pccs_ext
except ImportError:  # pragma: no cover - depends on the build
    _pccs_ext = None

if os.environ.get("MINPSC_PURE_PYTHON"):
    _pccs_ext = None

BACKEND = "compiled" if _pccs_ext is not None else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _pccs_ext is not None else ["python"]


@dataclass(frozen=True)
class PccsProblem:
    """``graph`` is anything with ``n`` and weighted ``adjacency`` lists."""

    graph: object
    coloring: Sequence[int]
    floor: Sequence[int]
    colors: Collection[int]


@dataclass(frozen=True)
class PccsResult:
    value: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    excess: int


@dataclass
class DpTable:
    layout: "Layout"
    k: int
    col: np.ndarray
    D: Sequence[int]
    alive: Sequence[int]

    def entry(self, v: int, slot: int, mask: int) -> int:
        c = int(self.col[v])
        if c < 0 or not (mask >> c) & 1:
            return INF
        return int(self.D[_pccs_py.compress(mask, c) * self.layout.S + slot])

    def root(self) -> tuple[int, int] | None:
        """Vertex and anchor slot of the cheapest full-colour entry (ties: lowest vertex, slot)."""
        full = (1 << self.k) - 1
        best = None
        lay = self.layout
        for v in range(lay.n):
            if self.col[v] < 0:
                continue
            for s in range(lay.anc_off[v], lay.anc_off[v + 1]):
                val = self.entry(v, s, full)
                if val < INF and (best is None or val < best[0]):
                    best = (val, v, s)
        return None if best is None else (best[1], best[2])


class Layout:
    """Colour-independent arrays describing anchors, payments and leaf-extension windows.

    ``discount[v]`` is subtracted from whatever ``v`` pays; the colour-coding
    solver uses it to rank trees by what they cost above the floors.
    """

    def __init__(self, graph, floor: Sequence[int], discount: Sequence[int] | None = None):
        n = graph.n
        adj = graph.adjacency
        discount = [0] * n if discount is None else list(discount)
        anchors = []
        for v in range(n):
            lst = [(0, 0, v)] + sorted((w, 1, u) for u, w in adj[v])
            anchors.append(lst)
        anc_off = [0]
        for lst in anchors:
            anc_off.append(anc_off[-1] + len(lst))
        S = anc_off[-1]
        anc_vertex = [0] * S
        anc_w = [0] * S
        pay = [0] * S
        grp_end = [0] * S
        slot_of: list[dict[int, int]] = [dict() for _ in range(n)]
        total = 0
        for v, lst in enumerate(anchors):
            off = anc_off[v]
            for i, (w, _, u) in enumerate(lst):
                s = off + i
                anc_vertex[s] = u
                anc_w[s] = w
                pay[s] = max(floor[v], w) - discount[v]
                slot_of[v][u] = s
            end = anc_off[v + 1] - 1
            for s in range(end, off - 1, -1):
                if s < end and anc_w[s] == anc_w[s + 1]:
                    grp_end[s] = grp_end[s + 1]
                else:
                    grp_end[s] = s
            total += max(pay[off:anc_off[v + 1]])
        if total >= INF // 4:
            raise ValueError("edge weights too large for the DP sentinel")
        pos = [-1] * S
        for v in range(n):
            for s in range(anc_off[v], anc_off[v + 1]):
                u = anc_vertex[s]
                if u == v:
                    continue
                lo, hi = anc_off[u], anc_off[u + 1]
                pos[s] = bisect.bisect_left(anc_w, anc_w[s], lo, hi)
        self.n = n
        self.S = S
        self.floor = list(floor)
        self.discount = discount
        self.slot_of = slot_of
        self.anc_off = np.asarray(anc_off, dtype=np.int64)
        self.anc_vertex = np.asarray(anc_vertex, dtype=np.int64)
        self.anc_w = np.asarray(anc_w, dtype=np.int64)
        self.pay = np.asarray(pay, dtype=np.int64)
        self.grp_end = np.asarray(grp_end, dtype=np.int64)
        self.pos = np.asarray(pos, dtype=np.int64)
        self._pylists = None

    def weight(self, v: int, u: int) -> int:
        return int(self.anc_w[self.slot_of[v][u]])

    def fill(self, col: np.ndarray, k: int, backend: str | None = None, trace=None) -> DpTable:
        backend = backend or BACKEND
        rows = 1 << (k - 1)
        if rows * self.S * 8 > MAX_TABLE_BYTES:
            raise TooLarge(f"DP table would need {rows * self.S * 8} bytes")
        if trace is not None:
            backend = "python"
        if backend == "compiled":
            if _pccs_ext is None:
                raise RuntimeError("compiled backend not available")
            D, alive = _pccs_ext.fill_table(
                self.n, k, col, self.anc_off, self.anc_vertex, self.pay, self.grp_end, self.pos
            )
        else:
            if self._pylists is None:
                self._pylists = tuple(
                    a.tolist() for a in (self.anc_off, self.anc_vertex, self.pay, self.grp_end, self.pos)
                )
            off, av, pay, ge, pos = self._pylists
            D, alive = _pccs_py.fill_table(self.n, k, col.tolist(), off, av, pay, ge, pos, trace=trace)
        return DpTable(self, k, col, D, alive)


def reconstruct(table: DpTable, root: tuple[int, int]) -> tuple[set[int], set[tuple[int, int]]]:
    """Replay the recurrences from ``root = (v, q)`` and return the witness tree.

    ``q`` is the anchor vertex (``v`` itself for the weight-0 self anchor).
    """
    lay = table.layout
    v, q = root
    slot = lay.slot_of[v][q]
    full = (1 << table.k) - 1
    if table.entry(v, slot, full) >= INF:
        raise CorruptTable(f"root {root} has no finite entry")
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    _replay(table, v, slot, full, verts, edges)
    return verts, edges


def _replay(table: DpTable, v: int, s: int, mask: int, verts: set, edges: set) -> None:
    lay = table.layout
    col = table.col
    c = int(col[v])
    bit = 1 << c
    value = table.entry(v, s, mask)
    pay = int(lay.pay[s])
    if mask == bit:
        if value != pay:
            raise CorruptTable(f"base entry ({v}, {s}) holds {value}, expected {pay}")
        verts.add(v)
        return
    rest = mask ^ bit
    a0, a1 = int(lay.anc_off[v]), int(lay.anc_off[v + 1])
    limit = int(lay.anc_w[s])
    for t in range(a0, a1):
        u = int(lay.anc_vertex[t])
        if u == v or int(lay.anc_w[t]) > limit:
            continue
        cu = int(col[u])
        if cu < 0 or not (rest >> cu) & 1:
            continue
        for t2 in range(int(lay.pos[t]), int(lay.anc_off[u + 1])):
            sub_val = table.entry(u, t2, rest)
            if sub_val < INF and sub_val + pay == value:
                _replay(table, u, t2, rest, verts, edges)
                verts.add(v)
                edges.add(norm(v, u))
                return
    low = rest & -rest
    others = rest ^ low
    sub = others
    while True:
        sub = (sub - 1) & others
        if sub == others:
            break
        m1 = sub | low | bit
        m2 = (rest ^ (sub | low)) | bit
        x, y = table.entry(v, s, m1), table.entry(v, s, m2)
        if x < INF and y < INF and x + y - pay == value:
            _replay(table, v, s, m1, verts, edges)
            _replay(table, v, s, m2, verts, edges)
            return
    raise CorruptTable(f"no recurrence reproduces D[{v}, slot {s}, {mask:b}] = {value}")


class PccsSolver:
    """Solve MinPCCS repeatedly on one graph under changing colourings."""

    def __init__(self, graph, floor: Sequence[int], discount: Sequence[int] | None = None,
                 max_colors: int = MAX_COLORS, backend: str | None = None):
        self.graph = graph
        self.layout = Layout(graph, floor, discount)
        self.max_colors = max_colors
        self.backend = backend

    def table(self, coloring: Sequence[int], colors: Collection[int], trace=None):
        palette = sorted(set(colors))
        k = len(palette)
        if k > self.max_colors:
            raise TooManyColors(f"{k} colours exceed the guard of {self.max_colors}")
        if k == 0:
            return None
        dense = {c: i for i, c in enumerate(palette)}
        col = np.fromiter((dense.get(c, -1) for c in coloring), dtype=np.int64, count=self.layout.n)
        if len(set(col[col >= 0].tolist())) != k:
            return None
        return self.layout.fill(col, k, self.backend, trace=trace)

    def solve(self, coloring: Sequence[int], colors: Collection[int]) -> PccsResult | None:
        table = self.table(coloring, colors)
        if table is None:
            return None
        root = table.root()
        if root is None:
            return None
        v, s = root
        lay = self.layout
        excess = table.entry(v, s, (1 << table.k) - 1)
        verts, edges = reconstruct(table, (v, int(lay.anc_vertex[s])))
        value = pccs_objective(lay, verts, edges)
        if value - sum(lay.discount[x] for x in verts) != excess:
            raise CorruptTable(f"witness costs {value}, table promised {excess}")
        return PccsResult(value, tuple(sorted(verts)), tuple(sorted(edges)), excess)


def pccs_objective(layout: Layout, verts, edges) -> int:
    pay = {v: layout.floor[v] for v in verts}
    for u, v in edges:
        w = layout.weight(u, v)
        pay[u] = max(pay[u], w)
        pay[v] = max(pay[v], w)
    return sum(pay.values())


def solve_pccs(problem: PccsProblem, *, max_colors: int = MAX_COLORS, backend: str | None = None) -> PccsResult | None:
    """Optimal colorful tree, or ``None`` when no colorful connected subgraph exists."""
    solver = PccsSolver(problem.graph, problem.floor, max_colors=max_colors, backend=backend)
    return solver.solve(problem.coloring, problem.colors)
