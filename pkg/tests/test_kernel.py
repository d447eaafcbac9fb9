import itertools
import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from minpsc.errors import IndexOutOfRange, InconsistentLog, NotACycle, PathTooShort
from minpsc.exact import solve_cotree, solve_exact_dp
from minpsc.generators import tree_plus_g
from minpsc.graph import Instance
from minpsc.kernel import (
    MIN_RR2_LENGTH, AnnotatedInstance, DegreeTwoPath, Rr2Record, annotated_cost, apply_rr1, apply_rr2, beta,
    deannotate, degree_two_paths, kernelize, lift, most_beneficial_index, omission_cost, representative,
    solve_cycle, solve_reduced, solve_via_kernel,
)

from conftest import random_instance
from oracles import annotated_opt_of, opt


def subdivide(inst, rng, lo, hi, wmax=6):
    """Replace each edge by a path with a random number of edges in ``lo..hi``."""
    edges, nxt = [], inst.n
    for u, v, w in inst.edges:
        prev = u
        for _ in range(rng.randint(lo, hi) - 1):
            edges.append((prev, nxt, rng.randint(1, wmax)))
            prev, nxt = nxt, nxt + 1
        edges.append((prev, v, w))
    return Instance(nxt, edges)


def theta(lengths, rng, wmax=6):
    """Two hubs joined by internally disjoint paths of the given lengths."""
    edges, nxt = [], 2
    for h in lengths:
        prev = 0
        for _ in range(h - 1):
            edges.append((prev, nxt, rng.randint(1, wmax)))
            prev, nxt = nxt, nxt + 1
        edges.append((prev, 1, rng.randint(1, wmax)))
    return Instance(nxt, edges)


def annotated(n, edges, ell):
    return AnnotatedInstance.from_instance(Instance(n, edges, check_connected=False), ell)


# --- degree-one rule ---------------------------------------------------------

def test_rr1_fig1(fig1):
    ai = apply_rr1(AnnotatedInstance.from_instance(fig1))
    assert ai.offset == 10
    assert sorted(ai.adj) == [1, 2, 4, 5]
    assert ai.ell[1] == 5 and ai.ell[2] == 5 and ai.ell[4] == 0


def test_rr1_collapses_a_path():
    ai = apply_rr1(AnnotatedInstance.from_instance(Instance(3, [(0, 1, 3), (1, 2, 5)])))
    assert ai.n == 1 and ai.offset == 3 + 5 + 5 + 0
    assert sum(ai.ell.values()) == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rr1_preserves_optimum(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(2, 8), rng.randint(0, 3))
    ell = [rng.choice([0, 0, rng.randint(1, 6)]) for _ in range(inst.n)]
    ai = AnnotatedInstance.from_instance(inst, ell)
    before = annotated_opt_of(ai)
    apply_rr1(ai)
    assert annotated_opt_of(ai) + ai.offset == before


# --- cycles --------------------------------------------------------------------

def test_solve_cycle_examples():
    value, kept = solve_cycle(annotated(3, [(0, 1, 5), (1, 2, 5), (0, 2, 1)], [0, 0, 0]))
    assert value == 11 and len(kept) == 2
    value, _ = solve_cycle(annotated(5, [(i, (i + 1) % 5, 4) for i in range(5)], [0] * 5))
    assert value == 20


def test_solve_cycle_may_keep_every_edge():
    ai = annotated(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)], [2, 2, 2])
    value, kept = solve_cycle(ai)
    assert value == 6 and annotated_cost(ai, kept) == 6


def test_solve_cycle_rejects_non_cycles():
    with pytest.raises(NotACycle):
        solve_cycle(annotated(3, [(0, 1, 1), (1, 2, 1)], [0, 0, 0]))
    two = annotated(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)], [0] * 6)
    with pytest.raises(NotACycle):
        solve_cycle(two)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1))
def test_solve_cycle_matches_oracle(n, seed):
    rng = random.Random(seed)
    ai = annotated(n, [(i, (i + 1) % n, rng.randint(1, 6)) for i in range(n)], [rng.randint(0, 6) for _ in range(n)])
    assert solve_cycle(ai)[0] == annotated_opt_of(ai)


# --- path quantities -------------------------------------------------------------

def test_beta_and_omission_on_fig2(fig2):
    inst, ell = fig2
    ai = AnnotatedInstance.from_instance(inst, [ell.get(v, 0) for v in range(inst.n)])
    path = DegreeTwoPath((0, 1, 2, 3, 4))
    assert [beta(ai, path, j) for j in (1, 2)] == [3, 2]
    assert [omission_cost(ai, path, j) for j in (1, 2)] == [11, 12]
    for j in (0, 3, -1):
        with pytest.raises(IndexOutOfRange):
            beta(ai, path, j)


def _long_path_instance(weights, ell=None):
    """Path whose two ends also hang in a triangle each, so both ends have degree three."""
    h = len(weights)
    edges = [(k, k + 1, w) for k, w in enumerate(weights)]
    a, b, c, d = h + 1, h + 2, h + 3, h + 4
    edges += [(0, a, 1), (0, b, 1), (a, b, 1), (h, c, 1), (h, d, 1), (c, d, 1)]
    return AnnotatedInstance.from_instance(Instance(h + 5, edges), ell)


def test_degree_two_paths_finds_the_chain():
    ai = _long_path_instance([3] * 9)
    long = [p for p in degree_two_paths(ai) if p.h > 3]
    assert long == [DegreeTwoPath(tuple(range(10)))]


def test_uniform_path_representative():
    w = 4
    ai = _long_path_instance([w] * 10)
    (path,) = [p for p in degree_two_paths(ai) if p.h == 10]
    rep = representative(ai, path)
    assert rep.i == 2
    assert rep.new_ell == {"u1": w, "u2": w}
    assert rep.vertices == (0, 1, "u1", 2, 3, "u2", 9, 10)
    assert rep.weights == (w,) * 7


def test_strict_end_representative():
    # only inner edge 1 saves anything when dropped
    weights = [1, 9, 1, 1, 1, 1, 1, 1, 1]
    ai = _long_path_instance(weights)
    (path,) = [p for p in degree_two_paths(ai) if p.h == 9]
    assert most_beneficial_index(ai, path) == 1
    rep = representative(ai, path)
    assert rep.vertices == (0, 1, 2, "u2", 8, 9)
    assert rep.source == (0, 1, 2, 7, 8)
    # mirrored
    ai = _long_path_instance(weights[::-1])
    (path,) = [p for p in degree_two_paths(ai) if p.h == 9]
    rep = representative(ai, path)
    assert rep.i == 7 and rep.vertices == (0, 1, "u1", 7, 8, 9)


def test_short_path_is_rejected():
    ai = _long_path_instance([2] * (MIN_RR2_LENGTH - 1))
    (path,) = [p for p in degree_two_paths(ai) if p.h == MIN_RR2_LENGTH - 1]
    with pytest.raises(PathTooShort):
        representative(ai, path)


def _rr2_case(rng, lengths):
    inst = theta(lengths, rng)
    ell = [rng.choice([0, rng.randint(1, 6)]) for _ in range(inst.n)]
    return AnnotatedInstance.from_instance(inst, ell)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rr2_preserves_optimum(seed):
    rng = random.Random(seed)
    ai = _rr2_case(rng, [rng.randint(MIN_RR2_LENGTH, 10), 1, rng.randint(2, 3)])
    before = annotated_opt_of(ai)
    apply_rr2(ai)
    assert any(isinstance(r, Rr2Record) for r in ai.log)
    assert annotated_opt_of(ai) + ai.offset == before


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rr2_on_a_petal(seed):
    """A chain leaving and re-entering the same branch vertex."""
    rng = random.Random(seed)
    h = rng.randint(MIN_RR2_LENGTH, 10)
    edges = [(k, k + 1, rng.randint(1, 6)) for k in range(h - 1)] + [(h - 1, 0, rng.randint(1, 6))]
    edges += [(0, h, 2), (0, h + 1, 3), (h, h + 1, 1)]
    ai = AnnotatedInstance.from_instance(Instance(h + 2, edges), [rng.randint(0, 4) for _ in range(h + 2)])
    before = annotated_opt_of(ai)
    apply_rr2(ai)
    assert ai.n < h + 2
    assert annotated_opt_of(ai) + ai.offset == before


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dropping_the_chosen_edge_is_never_worse(seed):
    """Among solutions that leave out one inner chain edge, the chosen index is as good as any."""
    rng = random.Random(seed)
    h = rng.randint(MIN_RR2_LENGTH, 12)
    ai = _long_path_instance([rng.randint(1, 6) for _ in range(h)], None)
    for v in ai.ell:
        ai.ell[v] = rng.choice([0, rng.randint(1, 6)])
    (path,) = [p for p in degree_two_paths(ai) if p.h == h]
    i = most_beneficial_index(ai, path)
    best_inner = min(omission_cost(ai, path, j) for j in range(1, h - 1))
    assert omission_cost(ai, path, i) == best_inner


# --- pendants ---------------------------------------------------------------------

def test_deannotate_single_vertex():
    ai = AnnotatedInstance({0: {}}, {0: 7}, 0, 1, [])
    inst, delta = deannotate(ai)
    assert inst.n == 2 and inst.edges == ((0, 1, 7),)
    assert delta == -7 and ai.offset == -7


def test_deannotate_fig1(fig1):
    ai = apply_rr1(AnnotatedInstance.from_instance(fig1))
    inst, delta = deannotate(ai)
    assert (inst.n, inst.m, delta) == (6, 6, -10)
    assert opt(inst) + ai.offset == 26


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_deannotate_preserves_optimum(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 6), rng.randint(0, 3))
    ai = AnnotatedInstance.from_instance(inst, [rng.choice([0, rng.randint(1, 6)]) for _ in range(inst.n)])
    before = annotated_opt_of(ai)
    plain, _ = deannotate(ai)
    assert opt(plain) + ai.offset == before


# --- whole pipeline ---------------------------------------------------------------

def test_kernelize_tree():
    tree = tree_plus_g(20, 0, seed=4)
    k = kernelize(tree)
    assert k.reduced.n == 1 and k.g == 0
    assert k.d == solve_cotree(tree).total_cost
    assert lift(k.log, [], tree).total_cost == k.d


def test_kernelize_fig1(fig1):
    k = kernelize(fig1)
    assert k.cycle
    sol, _ = solve_reduced(k.reduced)
    assert sol.total_cost + k.d == 26
    assert lift(k.log, sol, fig1).total_cost == 26


def test_kernel_and_lift_on_random_instances():
    rng = random.Random(31)
    for _ in range(150):
        base = random_instance(rng, rng.randint(2, 5), rng.randint(0, 3))
        inst = subdivide(base, rng, 1, 3) if rng.random() < 0.5 else base
        if inst.n > 9:
            continue
        k = kernelize(inst)
        best = opt(inst)
        assert opt(k.reduced) + k.d == best
        sol, _ = solve_reduced(k.reduced)
        lifted = lift(k.log, sol, inst)
        assert lifted.total_cost == best


def test_kernel_size_bounds():
    for g in range(1, 6):
        for seed in range(10):
            k = kernelize(tree_plus_g(300, g, seed=seed))
            assert k.intermediate_n <= 20 * g - 13
            assert k.intermediate_m <= 21 * g - 14
            assert k.reduced.n <= k.vertex_bound
            assert k.reduced.m <= k.edge_bound


def test_subdivided_k33_meets_the_bound():
    """Chains of exactly eight edges must be shortened for the vertex bound to hold."""
    rng = random.Random(0)
    k33 = Instance(6, [(a, b, rng.randint(1, 6)) for a in range(3) for b in range(3, 6)])
    inst = subdivide(k33, rng, 8, 8)
    k = kernelize(inst)
    assert k.g == 4
    assert k.intermediate_n <= 20 * k.g - 13
    assert solve_via_kernel(inst).total_cost == solve_cotree(inst).total_cost


def test_solve_via_kernel_long_chains():
    rng = random.Random(12)
    for _ in range(5):
        inst = subdivide(random_instance(rng, 4, 2), rng, 6, 14)
        assert solve_via_kernel(inst).total_cost == solve_cotree(inst).total_cost


def test_lift_rejects_foreign_solutions(fig1):
    k = kernelize(fig1)
    with pytest.raises(InconsistentLog):
        lift(k.log, [(0, 99)], fig1)


def test_large_kernelization_is_fast():
    inst = tree_plus_g(100_000, 5, seed=1)
    t0 = time.perf_counter()
    k = kernelize(inst)
    assert time.perf_counter() - t0 < 5
    assert k.reduced.n <= k.vertex_bound
