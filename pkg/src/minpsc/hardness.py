"""Set cover instances as min-power instances, and the margin objective.

Vertex layout of the transformed graph: ``0`` is the hub ``s``, ``1..n_u``
are the elements and the sets follow.  The hub reaches every set with
weight 1; an element reaches each set containing it with weight 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidParams, TooLarge, UncoveredElement
from .graph import Instance, Solution

SET_COVER_MAX_SETS = 20


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __init__(self, universe_size: int, sets: Iterable[Iterable[int]]):
        fam = tuple(frozenset(s) for s in sets)
        if universe_size < 0:
            raise InvalidParams("universe size must be nonnegative")
        for s in fam:
            if any(not 0 <= x < universe_size for x in s):
                raise InvalidParams(f"set {sorted(s)} leaves the universe 0..{universe_size - 1}")
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "sets", fam)

    def uncovered(self) -> list[int]:
        covered = set().union(*self.sets) if self.sets else set()
        return [x for x in range(self.universe_size) if x not in covered]

    def lower_bound(self) -> int:
        """Cost every connected spanning subgraph of the transformed graph reaches."""
        return 2 * self.universe_size + len(self.sets) + 1


def element_vertex(sc: SetCoverInstance, x: int) -> int:
    return 1 + x


def set_vertex(sc: SetCoverInstance, i: int) -> int:
    return 1 + sc.universe_size + i


def setcover_to_minpsc(sc: SetCoverInstance) -> Instance:
    missing = sc.uncovered()
    if missing:
        raise UncoveredElement(f"elements {missing} lie in no set")
    if not sc.sets:
        raise InvalidParams("the set family is empty")
    edges = []
    for i, s in enumerate(sc.sets):
        sv = set_vertex(sc, i)
        edges.append((0, sv, 1))
        edges += [(element_vertex(sc, x), sv, 2) for x in sorted(s)]
    return Instance(1 + sc.universe_size + len(sc.sets), edges)


def lightest_incident_total(instance: Instance) -> int:
    if instance.n == 1:
        return 0
    return sum(min(w for _, w in instance.adjacency[v]) for v in range(instance.n))


def margin(instance: Instance, sol: Solution) -> int:
    """Cost above the sum of lightest incident edges."""
    return sol.total_cost - lightest_incident_total(instance)


def min_set_cover(sc: SetCoverInstance, *, max_sets: int = SET_COVER_MAX_SETS) -> tuple[int, ...]:
    """Indices of a smallest cover (lexicographically first among them)."""
    if len(sc.sets) > max_sets:
        raise TooLarge(f"{len(sc.sets)} sets exceed the guard of {max_sets}")
    if sc.uncovered():
        raise UncoveredElement(f"elements {sc.uncovered()} lie in no set")
    universe = set(range(sc.universe_size))
    for k in range(len(sc.sets) + 1):
        for pick in itertools.combinations(range(len(sc.sets)), k):
            if universe <= set().union(*(sc.sets[i] for i in pick)):
                return pick
    raise AssertionError("unreachable: the whole family is a cover")


def cover_from_solution(sc: SetCoverInstance, edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Sets whose vertex uses an element edge in the solution; the margin bounds its size."""
    first_set = set_vertex(sc, 0)
    picked = set()
    for u, v in edges:
        a, b = min(u, v), max(u, v)
        if 1 <= a < first_set <= b:
            picked.add(b - first_set)
    return tuple(sorted(picked))
