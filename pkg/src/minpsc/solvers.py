"""One entry point for every solver, shared by the CLI and the benchmark harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bounds import obligatory_subgraph, trivial_lower_bounds
from .color_coding import CcConfig, run_color_coding
from .exact import brute_force_connector, brute_force_tree, solve_exact_dp
from .graph import Instance, Solution, minimum_spanning_tree
from .kernel import solve_via_kernel

ALGORITHMS = ("auto", "exact", "brute-tree", "connector", "cc", "cc-det", "kernel+exact", "mst")
AUTO_MAX_G = 8
AUTO_MAX_CC_COLORS = 12


@dataclass(frozen=True)
class Outcome:
    solution: Solution
    algo: str
    c: int
    g: int
    notes: dict


def lower_bounds_for(instance: Instance, ell: dict[int, int] | None) -> list[int]:
    """Trivial bounds, overridden per vertex by any supplied annotations."""
    base = trivial_lower_bounds(instance) if instance.n >= 2 else [0]
    if ell:
        for v, x in ell.items():
            base[v] = x
    return base


def choose_auto(g: int, c: int, n: int) -> str:
    if g <= AUTO_MAX_G:
        return "kernel+exact"
    if 2 * c - 2 <= AUTO_MAX_CC_COLORS:
        return "cc-det"
    return "exact"


def run(instance: Instance, algo: str = "auto", *, ell: Sequence[int] | None = None, seed: int = 0,
        epsilon: float = 0.01, max_repetitions: int | None = None) -> Outcome:
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    bounds = list(ell) if ell is not None else lower_bounds_for(instance, None)
    g = instance.m - instance.n + 1
    c = obligatory_subgraph(instance, bounds).c
    if algo == "auto":
        algo = choose_auto(g, c, instance.n)
    notes: dict = {}
    if algo == "exact":
        sol = solve_exact_dp(instance)
    elif algo == "brute-tree":
        sol = brute_force_tree(instance)
    elif algo == "connector":
        sol = brute_force_connector(instance, bounds)
    elif algo in ("cc", "cc-det"):
        mode = "deterministic" if algo == "cc-det" else "randomized"
        rep = run_color_coding(instance, bounds, CcConfig(epsilon=epsilon, seed=seed, mode=mode,
                                                          max_repetitions=max_repetitions))
        sol = rep.solution
        notes = {"colorings": rep.colorings_tried, "truncated": rep.truncated, "fallback": rep.fallback_used}
    elif algo == "kernel+exact":
        sol = solve_via_kernel(instance)
    else:
        sol = minimum_spanning_tree(instance)
    return Outcome(sol, algo, c, g, notes)
