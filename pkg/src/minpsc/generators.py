"""Seeded random instance families."""

from __future__ import annotations

import math
import random

from .errors import DisconnectedResult, InvalidParams
from .graph import Instance, connected_components
from .hardness import SetCoverInstance, setcover_to_minpsc

MAX_TRIES = 100


def tree_plus_g(n: int, g: int, wmax: int = 10, seed: int = 0) -> Instance:
    """Random recursive tree on ``n`` vertices plus ``g`` distinct random chords."""
    if n < 1 or g < 0 or wmax < 1:
        raise InvalidParams("need n >= 1, g >= 0 and wmax >= 1")
    if g > n * (n - 1) // 2 - (n - 1):
        raise InvalidParams(f"a simple graph on {n} vertices has room for fewer than {g} chords")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {}
    for k in range(1, n):
        u, v = order[rng.randrange(k)], order[k]
        edges[(min(u, v), max(u, v))] = rng.randint(1, wmax)
    while len(edges) < n - 1 + g:
        u, v = rng.sample(range(n), 2)
        key = (min(u, v), max(u, v))
        if key not in edges:
            edges[key] = rng.randint(1, wmax)
    return Instance(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


def _largest_component(n: int, edges: list[tuple[int, int, int]], alive: list[bool]) -> Instance:
    comps = connected_components([v for v in range(n) if alive[v]], edges)
    if not comps:
        raise DisconnectedResult("every vertex was dropped")
    keep = max(comps, key=len)
    dense = {v: i for i, v in enumerate(keep)}
    return Instance(len(keep), [(dense[u], dense[v], w) for u, v, w in edges if u in dense and v in dense])


def grid(rows: int, cols: int, defect_prob: float = 0.0, weight: str = "uniform", w: int = 1,
         wmax: int = 10, seed: int = 0) -> Instance:
    """Grid graph; each vertex fails with ``defect_prob`` and the largest surviving component is kept.

    ``weight="uniform"`` gives every edge weight ``w``; ``"perturbed"`` draws from ``w..wmax``.
    """
    if rows < 1 or cols < 1 or not 0 <= defect_prob < 1:
        raise InvalidParams("need positive dimensions and 0 <= defect_prob < 1")
    if weight not in ("uniform", "perturbed") or w < 1 or (weight == "perturbed" and wmax < w):
        raise InvalidParams(f"bad weight specification {weight!r}")
    rng = random.Random(seed)
    n = rows * cols
    alive = [rng.random() >= defect_prob for _ in range(n)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            for u in ((v + 1) if c + 1 < cols else None, (v + cols) if r + 1 < rows else None):
                if u is not None and alive[u] and alive[v]:
                    edges.append((v, u, w if weight == "uniform" else rng.randint(w, wmax)))
    return _largest_component(n, edges, alive)


def geometric(n: int, radius: float, alpha: float = 2.0, seed: int = 0, max_tries: int = MAX_TRIES) -> Instance:
    """Random points in the unit square joined when closer than ``radius``; ``w = ceil(100 * dist**alpha)``."""
    if n < 1 or radius <= 0 or alpha <= 0:
        raise InvalidParams("need n >= 1, radius > 0 and alpha > 0")
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = [(rng.random(), rng.random()) for _ in range(n)]
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                d = math.dist(pts[u], pts[v])
                if d <= radius:
                    edges.append((u, v, max(1, math.ceil(d**alpha * 100))))
        if len(connected_components(n, edges)) == 1:
            return Instance(n, edges)
    raise DisconnectedResult(f"no connected sample in {max_tries} tries; increase the radius")


def parse_sets(text: str) -> list[list[int]]:
    """``"0,1;1,2"`` -> ``[[0, 1], [1, 2]]``; an empty segment is an empty set."""
    try:
        return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";")]
    except ValueError:
        raise InvalidParams(f"cannot parse set family {text!r}") from None


def setcover(universe: int, sets: list[list[int]]) -> Instance:
    return setcover_to_minpsc(SetCoverInstance(universe, sets))
