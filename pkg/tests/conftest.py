import random

import pytest
from hypothesis import strategies as st

from minpsc.graph import Instance
from minpsc.io import load_fixture


@pytest.fixture
def fig1():
    return load_fixture("fig1.gr")[0]


@pytest.fixture
def fig2():
    return load_fixture("fig2.gr")


def random_instance(rng, n, extra, wmax=6):
    """Random tree on ``n`` vertices plus up to ``extra`` chords."""
    edges = {}
    for v in range(1, n):
        edges[(rng.randrange(v), v)] = rng.randint(1, wmax)
    for _ in range(extra):
        if n < 3:
            break
        u, v = sorted(rng.sample(range(n), 2))
        edges.setdefault((u, v), rng.randint(1, wmax))
    perm = list(range(n))
    rng.shuffle(perm)
    return Instance(n, [(perm[u], perm[v], w) for (u, v), w in edges.items()])


@st.composite
def instances(draw, min_n=2, max_n=7, wmax=6, max_extra=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    extra = draw(st.integers(0, max_extra))
    return random_instance(random.Random(seed), n, extra, wmax)
