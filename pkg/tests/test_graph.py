import itertools
import random

import pytest
from hypothesis import given, settings

from minpsc.errors import DisconnectedSelection, InvalidInstance
from minpsc.graph import (
    Instance, connected_components, cost, feedback_edge_info, is_connected_spanning,
    minimum_spanning_tree, relabel,
)

from conftest import instances
from oracles import opt

BOLD = [(0, 1), (1, 2), (2, 3), (2, 5), (4, 5)]


def test_fig1_bold_edges_cost_26(fig1):
    sol = cost(fig1, BOLD)
    assert sol.total_cost == 26
    assert sol.per_vertex_cost == (5, 6, 6, 5, 1, 3)


def test_single_edge_both_endpoints_pay():
    assert cost(Instance(2, [(0, 1, 3)]), [(0, 1)]).total_cost == 6


def test_single_vertex_costs_nothing():
    assert cost(Instance(1, []), []).total_cost == 0


def test_disconnected_selection_raises(fig1):
    with pytest.raises(DisconnectedSelection):
        cost(fig1, [(0, 1)])


def test_edge_orientation_is_irrelevant(fig1):
    assert cost(fig1, [(v, u) for u, v in BOLD]) == cost(fig1, BOLD)


def test_is_connected_spanning(fig1):
    assert is_connected_spanning(fig1, [e[:2] for e in fig1.edges])
    assert not is_connected_spanning(fig1, [(0, 1)])
    assert is_connected_spanning(fig1, BOLD)


def test_connected_components(fig1):
    assert connected_components(6, [(0, 1), (2, 3), (4, 5)]) == [[0, 1], [2, 3], [4, 5]]
    assert connected_components(4, []) == [[0], [1], [2], [3]]
    assert connected_components(6, [e[:2] for e in fig1.edges]) == [list(range(6))]


def test_components_ordered_by_smallest_vertex():
    assert connected_components(5, [(3, 4), (1, 2)]) == [[0], [1, 2], [3, 4]]


def test_feedback_edge_number():
    tree = Instance(7, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 4, 1), (2, 5, 1), (2, 6, 1)])
    assert feedback_edge_info(tree).g == 0
    c5 = Instance(5, [(i, (i + 1) % 5, 2) for i in range(5)])
    assert feedback_edge_info(c5).g == 1


def test_feedback_edges_leave_a_spanning_tree(fig1):
    info = feedback_edge_info(fig1)
    assert info.g == 1
    rest = [e[:2] for e in fig1.edges if e[:2] not in info.feedback_edges]
    assert len(rest) == fig1.n - 1 and is_connected_spanning(fig1, rest)


def test_mst_baseline_costs_27(fig1):
    sol = minimum_spanning_tree(fig1)
    assert (1, 4) in sol.edges and (1, 2) not in sol.edges
    assert sol.total_cost == 27


def test_mst_of_path_is_the_path():
    path = Instance(4, [(0, 1, 3), (1, 2, 1), (2, 3, 2)])
    assert minimum_spanning_tree(path).edges == ((0, 1), (1, 2), (2, 3))


def test_mst_ties_take_smallest_edge_ids():
    k4 = Instance(4, [(u, v, 2) for u, v in itertools.combinations(range(4), 2)])
    assert minimum_spanning_tree(k4).edges == ((0, 1), (0, 2), (0, 3))


@pytest.mark.parametrize("bad", [
    [(0, 0, 1)],
    [(0, 1, 1), (1, 0, 2)],
    [(0, 1, 0)],
    [(0, 5, 1)],
])
def test_invalid_instances_rejected(bad):
    with pytest.raises(InvalidInstance):
        Instance(2, bad)


def test_disconnected_graph_rejected():
    with pytest.raises(InvalidInstance):
        Instance(3, [(0, 1, 1)])


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_feedback_number_formula(inst):
    assert feedback_edge_info(inst).g == inst.m - inst.n + 1


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6))
def test_relabelling_preserves_cost(inst):
    rng = random.Random(inst.m)
    perm = list(range(inst.n))
    rng.shuffle(perm)
    sel = minimum_spanning_tree(inst).edges
    moved = relabel(inst, perm)
    assert cost(moved, [(perm[u], perm[v]) for u, v in sel]).total_cost == cost(inst, sel).total_cost


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6, max_extra=4))
def test_trees_are_as_good_as_any_connected_subgraph(inst):
    """Dropping an edge never raises the cost, so trees suffice."""
    pairs = [e[:2] for e in inst.edges]
    best_any = min(
        cost(inst, sel).total_cost
        for k in range(inst.n - 1, inst.m + 1)
        for sel in itertools.combinations(pairs, k)
        if is_connected_spanning(inst, sel)
    )
    assert best_any == opt(inst)


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6))
def test_removing_a_redundant_edge_never_costs_more(inst):
    full = [e[:2] for e in inst.edges]
    base = cost(inst, full).total_cost
    for e in full:
        rest = [x for x in full if x != e]
        if is_connected_spanning(inst, rest):
            assert cost(inst, rest).total_cost <= base
