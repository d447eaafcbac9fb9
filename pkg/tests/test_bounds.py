import itertools

import pytest
from hypothesis import given, settings

from minpsc.bounds import (
    min_tree_payments, obligatory_subgraph, padded_graph, trivial_lower_bounds, validate_lower_bounds,
)
from minpsc.errors import InstanceTooLarge
from minpsc.generators import grid, tree_plus_g
from minpsc.graph import Instance, cost

from conftest import instances
from oracles import all_spanning_trees, connected_supersets_opt, opt


def test_fig1_trivial_bounds(fig1):
    assert trivial_lower_bounds(fig1) == [5, 5, 5, 5, 1, 1]


def test_uniform_triangle_and_single_edge():
    tri = Instance(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])
    assert trivial_lower_bounds(tri) == [2, 2, 2]
    assert trivial_lower_bounds(Instance(2, [(0, 1, 3)])) == [3, 3]


def test_several_leaf_neighbours_take_the_heaviest():
    star = Instance(4, [(0, 1, 2), (0, 2, 7), (0, 3, 4)])
    assert trivial_lower_bounds(star) == [7, 2, 7, 4]


def test_validate(fig1):
    assert validate_lower_bounds(fig1, trivial_lower_bounds(fig1))
    assert not validate_lower_bounds(fig1, [5, 5, 5, 5, 2, 1])
    assert validate_lower_bounds(fig1, [0] * 6)


def test_validate_guard():
    with pytest.raises(InstanceTooLarge):
        validate_lower_bounds(tree_plus_g(13, 1, seed=0), [0] * 13)


def test_fig1_obligatory_subgraph(fig1):
    obl = obligatory_subgraph(fig1, trivial_lower_bounds(fig1))
    assert obl.edges == ((0, 1), (2, 3), (4, 5))
    assert obl.c == 3
    assert obl.components == ((0, 1), (2, 3), (4, 5))


def test_zero_bounds_give_singletons(fig1):
    obl = obligatory_subgraph(fig1, [0] * 6)
    assert obl.edges == () and obl.c == 6


def test_uniform_grid_has_one_component():
    g = grid(5, 5, 0.0, "uniform", 1)
    assert obligatory_subgraph(g, trivial_lower_bounds(g)).c == 1


def test_padding_closes_components():
    path = Instance(4, [(0, 1, 1), (1, 2, 1), (2, 3, 5)])
    obl = obligatory_subgraph(path, [1, 1, 1, 0])
    padded = padded_graph(path, obl)
    assert padded.padded_edges == ((0, 2),)
    assert (2, 0) in padded.adjacency[0]


def test_fig1_needs_no_padding(fig1):
    assert padded_graph(fig1, obligatory_subgraph(fig1, trivial_lower_bounds(fig1))).padded_edges == ()


def test_singletons_pad_nothing(fig1):
    padded = padded_graph(fig1, obligatory_subgraph(fig1, [0] * 6))
    assert padded.padded_edges == () and padded.adjacency == fig1.adjacency


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_trivial_bounds_are_valid(inst):
    floor = min_tree_payments(inst)
    assert all(a <= b for a, b in zip(trivial_lower_bounds(inst), floor))


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_obligatory_edges_are_free(inst):
    obl = obligatory_subgraph(inst, trivial_lower_bounds(inst))
    assert connected_supersets_opt(inst, obl.edges) == opt(inst)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_one_component_means_obligatory_edges_are_optimal(inst):
    ell = trivial_lower_bounds(inst)
    obl = obligatory_subgraph(inst, ell)
    if obl.c == 1:
        assert cost(inst, obl.edges).total_cost == opt(inst) == sum(ell)


@settings(max_examples=40, deadline=None)
@given(instances(max_n=7))
def test_padding_only_inside_components(inst):
    obl = obligatory_subgraph(inst, trivial_lower_bounds(inst))
    padded = padded_graph(inst, obl)
    obligatory = set(obl.edges)
    expected = [
        tuple(sorted(p)) for comp in obl.components for p in itertools.combinations(comp, 2)
        if tuple(sorted(p)) not in obligatory
    ]
    assert padded.padded_edges == tuple(sorted(expected))
    weights = {(min(u, v), max(u, v)): w for u in range(inst.n) for v, w in padded.adjacency[u]}
    for (u, v), w in weights.items():
        if obl.component_of[u] == obl.component_of[v]:
            assert w == (inst.weight(u, v) if (u, v) in obligatory else 0)
        else:
            assert w == inst.weight(u, v)


def test_padding_shadows_non_obligatory_edges_inside_a_component():
    # 1-0-2 obligatory, 1-2 heavier than the floor of 1
    inst = Instance(4, [(0, 1, 1), (0, 2, 1), (1, 2, 3), (2, 3, 9)])
    obl = obligatory_subgraph(inst, [1, 1, 1, 0])
    padded = padded_graph(inst, obl)
    assert padded.padded_edges == ((1, 2),)
    assert (2, 0) in padded.adjacency[1] and (2, 3) not in padded.adjacency[1]
