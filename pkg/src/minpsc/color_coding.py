"""Color coding parameterized by the number ``c`` of obligatory components.

An optimal solution consists of the obligatory edges plus a tree that
touches every obligatory component and has at most ``2c - 2`` vertices.
For each guess of how many tree vertices lie in each component, the
vertices of component ``i`` are coloured from a private palette ``C_i`` and
a colourful tree is sought in the padded graph.  Each candidate is turned
back into a solution of the input by keeping its edges between different
components, adding the obligatory edges, and re-costing from scratch.

The DP ranks trees by what they pay *above* the floors: a tree vertex is
charged ``max(l(v), w) - l(v)``.  Charging the plain ``max(l(v), w)`` would
prefer trees with few vertices even when they force heavier connections,
because vertices outside the tree still pay their floor afterwards.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

import numpy as np

from .bounds import ObligatorySubgraph, obligatory_subgraph, padded_graph
from .errors import InvalidParams, TooManyColors
from .graph import Instance, Solution, cost, minimum_spanning_tree
from .pccs import MAX_COLORS, PccsSolver

DEFAULT_COLORING_CAP = 10**7


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]
    color_sets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Composition":
        sets, start = [], 0
        for p in parts:
            sets.append(tuple(range(start, start + p)))
            start += p
        return cls(tuple(parts), tuple(sets))

    @property
    def k(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class CcConfig:
    epsilon: float = 0.01
    seed: int = 0
    mode: Literal["randomized", "deterministic"] = "randomized"
    max_repetitions: int | None = None
    coloring_cap: int = DEFAULT_COLORING_CAP
    max_colors: int = MAX_COLORS
    backend: str | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InvalidParams(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.mode not in ("randomized", "deterministic"):
            raise InvalidParams(f"unknown mode {self.mode!r}")
        if self.max_repetitions is not None and self.max_repetitions < 1:
            raise InvalidParams("max_repetitions must be positive")


@dataclass(frozen=True)
class CcReport:
    solution: Solution
    c: int
    colorings_tried: int
    truncated: bool
    fallback_used: bool


def enumerate_compositions(c: int) -> list[Composition]:
    """All length-``c`` tuples of positive integers summing to at most ``2c - 2``, lexicographically."""
    if c < 2:
        raise InvalidParams("compositions need c >= 2")
    budget = 2 * c - 2
    out: list[Composition] = []
    prefix: list[int] = []

    def rec(left: int, slots: int) -> None:
        if slots == 0:
            out.append(Composition.from_parts(prefix))
            return
        for p in range(1, left - (slots - 1) + 1):
            prefix.append(p)
            rec(left - p, slots - 1)
            prefix.pop()

    rec(budget, c)
    return out


def success_probability(parts: Sequence[int]) -> float:
    """Chance that a random colouring makes a fixed vertex set colourful."""
    return math.prod(math.factorial(p) / p**p for p in parts)


def repetition_count(epsilon: float, parts: Sequence[int]) -> int:
    if not 0 < epsilon < 1:
        raise InvalidParams(f"epsilon must lie in (0, 1), got {epsilon}")
    p = success_probability(parts)
    if p >= 1.0:
        return 1
    return max(1, math.ceil(math.log(epsilon) / math.log1p(-p)))


def color_components(obl: ObligatorySubgraph, comp: Composition,
                     rng: np.random.Generator | None = None) -> Iterator[list[int]]:
    """Colourings with component ``i`` drawn from ``comp.color_sets[i]``.

    With a generator, yields one uniformly random colouring; without one,
    yields every colouring (the product over components).
    """
    n = len(obl.component_of)
    if rng is not None:
        col = [0] * n
        for comp_vertices, palette in zip(obl.components, comp.color_sets):
            draws = rng.integers(0, len(palette), size=len(comp_vertices))
            for v, d in zip(comp_vertices, draws):
                col[v] = palette[d]
        yield col
        return
    per_component = [
        itertools.product(palette, repeat=len(vs)) for vs, palette in zip(obl.components, comp.color_sets)
    ]
    for choice in itertools.product(*per_component):
        col = [0] * n
        for vs, colors in zip(obl.components, choice):
            for v, x in zip(vs, colors):
                col[v] = x
        yield col


def _feasible(obl: ObligatorySubgraph, comp: Composition) -> bool:
    return all(p <= len(vs) for p, vs in zip(comp.parts, obl.components))


def exhaustive_coloring_count(obl: ObligatorySubgraph, comps: Sequence[Composition], cap: int) -> int:
    """Total colourings of deterministic mode; stops counting once above ``cap``."""
    total = 0
    for comp in comps:
        if not _feasible(obl, comp):
            continue
        total += math.prod(p ** len(vs) for p, vs in zip(comp.parts, obl.components))
        if total > cap:
            break
    return total


def run_color_coding(instance: Instance, ell: Sequence[int], config: CcConfig = CcConfig()) -> CcReport:
    obl = obligatory_subgraph(instance, ell)
    if obl.c == 1:
        return CcReport(cost(instance, obl.edges), 1, 0, False, False)
    if 2 * obl.c - 2 > config.max_colors:
        raise TooManyColors(f"c={obl.c} needs {2 * obl.c - 2} colours, guard is {config.max_colors}")
    comps = enumerate_compositions(obl.c)
    deterministic = config.mode == "deterministic"
    if deterministic and exhaustive_coloring_count(obl, comps, config.coloring_cap) > config.coloring_cap:
        from .exact import solve_exact_dp

        return CcReport(solve_exact_dp(instance, backend=config.backend), obl.c, 0, False, True)

    padded = padded_graph(instance, obl)
    solver = PccsSolver(padded, ell, discount=ell, max_colors=config.max_colors, backend=config.backend)
    obligatory = list(obl.edges)
    comp_of = obl.component_of
    best: Solution | None = None
    tried = 0
    truncated = False
    seed = config.seed & (2**64 - 1)
    for ci, comp in enumerate(comps):
        if not _feasible(obl, comp):
            continue
        if deterministic:
            colorings: Iterator[list[int]] = color_components(obl, comp)
        else:
            t = repetition_count(config.epsilon, comp.parts)
            if config.max_repetitions is not None and t > config.max_repetitions:
                t = config.max_repetitions
                truncated = True
            colorings = (
                next(color_components(obl, comp, np.random.default_rng(np.random.SeedSequence([seed, ci, r]))))
                for r in range(t)
            )
        for col in colorings:
            tried += 1
            res = solver.solve(col, range(comp.k))
            if res is None:
                continue
            chosen = [e for e in res.edges if comp_of[e[0]] != comp_of[e[1]]] + obligatory
            sol = cost(instance, chosen)
            if best is None or sol.sort_key() < best.sort_key():
                best = sol
    if best is None:
        # unlucky random colourings; any spanning tree plus the obligatory edges is still feasible
        best = cost(instance, list(minimum_spanning_tree(instance).edges) + obligatory)
    return CcReport(best, obl.c, tried, truncated, False)


def solve_minpsc_cc(instance: Instance, ell: Sequence[int], config: CcConfig = CcConfig()) -> Solution:
    return run_color_coding(instance, ell, config).solution
