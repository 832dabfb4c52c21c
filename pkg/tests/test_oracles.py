from hypothesis import given, settings, strategies as st

from helpers import graphs
from lchoose.graph import Graph, make_complete, make_complete_bipartite, make_cycle, make_path
from lchoose.gsg import cyclic_group, identity_set, symmetric_group
from lchoose.oracles import (brute_signed_colorable, naive_gsg_all, naive_k_choosable,
                             naive_list_colorable, naive_signed_all)
from lchoose.signed import NK, ZK, SignedGraph
from lchoose.solver import solve_k


def test_known_choice_numbers():
    assert naive_k_choosable(make_cycle(4), 2)
    assert not naive_k_choosable(make_cycle(5), 2)
    assert naive_k_choosable(make_cycle(5), 3)
    assert not naive_k_choosable(make_complete_bipartite(2, 4), 2)
    assert naive_k_choosable(make_complete_bipartite(2, 3), 2)
    assert naive_k_choosable(Graph(0, ()), 1)
    assert not naive_k_choosable(make_path(1), 0)


def test_list_oracle():
    assert naive_list_colorable(make_path(2), [{1}, {1, 2}])
    assert not naive_list_colorable(make_path(2), [{1}, {1}])


def test_signed_oracles():
    tri = make_cycle(3)
    assert not brute_signed_colorable(SignedGraph.all_positive(tri), 2, NK)
    assert brute_signed_colorable(SignedGraph(tri, (-1, -1, -1)), 2, NK)
    assert not naive_signed_all(tri, 2, NK)
    assert naive_signed_all(make_path(3), 2, ZK)
    assert naive_signed_all(Graph(2, ()), 1, ZK)


def test_gsg_oracle():
    assert not naive_gsg_all(make_cycle(4), symmetric_group(2), 2)
    assert naive_gsg_all(make_path(4), symmetric_group(3), 3)
    assert not naive_gsg_all(make_complete(4), cyclic_group(3), 3)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5), st.integers(1, 4))
def test_identity_oracle_is_chromatic(g, k):
    assert naive_gsg_all(g, identity_set(k), k) == solve_k(g, k).colorable


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5))
def test_choosability_is_at_least_chromatic(g):
    if naive_k_choosable(g, 2):
        assert solve_k(g, 2).colorable
