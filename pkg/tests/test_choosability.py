import pytest
from hypothesis import given, settings

from helpers import graphs
from lchoose.assignments import BudgetExceeded, validate_lambda
from lchoose.choosability import (CHOOSABLE, INCONCLUSIVE, NOT_CHOOSABLE, decide_lambda_choosable,
                                  is_lambda_choosable)
from lchoose.graph import make_complete, make_complete_bipartite, make_cycle
from lchoose.oracles import naive_k_choosable
from lchoose.partitions import IntPartition
from lchoose.solver import solve_list

P = IntPartition.of


def test_even_cycle_is_two_choosable():
    assert decide_lambda_choosable(make_cycle(4), P(2)).status == CHOOSABLE


def test_k24_is_not_two_choosable_and_counterexample_is_real():
    g = make_complete_bipartite(2, 4)
    res = decide_lambda_choosable(g, P(2))
    assert res.status == NOT_CHOOSABLE
    a = res.counterexample
    assert validate_lambda(a)
    assert not solve_list(g, a.lists).colorable


def test_bipartite_graph_is_one_one_choosable():
    assert decide_lambda_choosable(make_complete_bipartite(3, 3), P(1, 1)).status == CHOOSABLE


def test_k4_without_pruning():
    # K4 has an empty 4-core, so pruning alone settles it; searching without it must agree.
    assert decide_lambda_choosable(make_complete(4), P(2, 2), prune=True).reason == "empty core"
    assert decide_lambda_choosable(make_complete(4), P(1, 1, 1), prune=False).status == NOT_CHOOSABLE
    assert decide_lambda_choosable(make_complete(4), P(2, 2), prune=False).status == CHOOSABLE


def test_budget_makes_result_inconclusive():
    res = decide_lambda_choosable(make_complete_bipartite(3, 3), P(2), budget=3)
    assert res.status == INCONCLUSIVE and res.choosable is None
    with pytest.raises(BudgetExceeded):
        is_lambda_choosable(make_complete_bipartite(3, 3), P(2), budget=3)


def test_parallel_run_agrees():
    g = make_complete_bipartite(2, 4)
    assert decide_lambda_choosable(g, P(2), jobs=2).status == NOT_CHOOSABLE


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5))
def test_two_choosability_matches_oracle(g):
    assert is_lambda_choosable(g, P(2)) == naive_k_choosable(g, 2)


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=5))
def test_order_monotonicity_on_small_graphs(g):
    # {2} <= {1,1}: choosable from every {2}-assignment implies every {1,1}-assignment.
    if is_lambda_choosable(g, P(2)):
        assert is_lambda_choosable(g, P(1, 1))
