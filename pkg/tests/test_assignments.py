import pytest
from hypothesis import given, settings, strategies as st

from helpers import lambda_assignments, partitions
from lchoose.assignments import (BudgetExceeded, LambdaAssignment, ListAssignment,
                                 SymmetricAssignment, count_lambda_assignments, coverage_multisets,
                                 enumerate_lambda_assignments, is_special, is_symmetric,
                                 list_complexity, merge_groups, specialize, symmetric_to_plain,
                                 validate_lambda)
from lchoose.graph import make_complete, make_path
from lchoose.partitions import IntPartition, is_refinement
from lchoose.solver import solve_list, verify_list_coloring

P = IntPartition.of


def test_enumeration_counts_on_tiny_graphs():
    assert len(list(enumerate_lambda_assignments(1, P(1)))) == 1
    assert len(list(enumerate_lambda_assignments(2, P(1)))) == 2
    assert len(list(enumerate_lambda_assignments(2, P(2)))) == 3
    for n, lam in [(1, P(1)), (2, P(1)), (2, P(2)), (3, P(2, 1)), (2, P(1, 1)), (3, P(2))]:
        assert count_lambda_assignments(n, lam) == len(list(enumerate_lambda_assignments(n, lam)))


def test_first_assignment_is_constant():
    first = next(enumerate_lambda_assignments(3, P(2, 1)))
    assert len(set(first.lists)) == 1


def test_special_enumeration_shares_unit_colours():
    for a in enumerate_lambda_assignments(3, P(2, 1), special=True):
        assert is_special(a) and validate_lambda(a)


def test_cell_limit():
    with pytest.raises(BudgetExceeded):
        next(enumerate_lambda_assignments(3, P(2), cell_limit=5))
    assert validate_lambda(next(enumerate_lambda_assignments(3, P(2), cell_limit=5, override=True)))


def test_coverage_multisets_small():
    # Two vertices, one colour each: either shared or two private colours.
    got = {tuple(sorted(ms)) for ms in coverage_multisets(2, 1)}
    assert got == {(0b11,), (0b01, 0b10)}


def test_validate_reports_problems():
    good = LambdaAssignment.from_groups([{1, 2, 5}, {1, 3, 6}], [{1, 2, 3}, {5, 6}])
    assert good.partition == P(2, 1) and validate_lambda(good)
    bad = LambdaAssignment(good.base, P(2, 1), (frozenset({1, 2, 3}), frozenset({3, 5, 6})))
    assert not validate_lambda(bad)
    short = LambdaAssignment(ListAssignment.of([{1, 5}, {1, 2, 6}]), P(2, 1),
                             (frozenset({1, 2}), frozenset({5, 6})))
    v = validate_lambda(short)
    assert not v and v.vertex == 0
    with pytest.raises(ValueError):
        LambdaAssignment.from_groups([{1, 2, 5}], [{1, 2}, {5}], partition=P(3))


def test_specialize_round_trip():
    a = LambdaAssignment.from_groups([{1, 2, 5}, {1, 3, 6}], [{1, 2, 3}, {5, 6}])
    sp = specialize(a)
    assert is_special(sp.assignment)
    assert sp.assignment.lists[0] & sp.assignment.groups[1] == sp.assignment.lists[1] & sp.assignment.groups[1]
    g = make_complete(2)
    verdict = solve_list(g, sp.assignment.lists)
    assert verdict.colorable
    assert verify_list_coloring(g, a.lists, sp.translate(verdict.witness))


def test_merge_groups():
    a = LambdaAssignment.from_groups([{1, 5}, {2, 5}], [{1, 2}, {5}])
    ok, cert = is_refinement(a.partition, P(2))
    merged = merge_groups(a, P(2), cert)
    assert validate_lambda(merged) and merged.groups == (frozenset({1, 2, 5}),)


def test_symmetric_assignments():
    s = SymmetricAssignment.of([{1, -1}, {2, -2, 1, -1}])
    assert is_symmetric(s)
    assert symmetric_to_plain(s).lists[0] == frozenset({1, -1})
    with pytest.raises(ValueError):
        symmetric_to_plain(SymmetricAssignment.of([{1, 2}]))
    assert not is_symmetric(SymmetricAssignment.of([{0}]))


def test_list_complexity():
    assert list_complexity(ListAssignment.of([{1, 2}, {1, 2}, {2, 3}])) == 2


@settings(max_examples=30, deadline=None)
@given(st.data(), partitions(max_total=4))
def test_enumeration_is_valid_and_distinct(data, lam):
    n = data.draw(st.integers(1, max(1, 6 // lam.total)))
    seen = set()
    for a in enumerate_lambda_assignments(n, lam):
        assert validate_lambda(a)
        key = (a.lists, a.groups)
        assert key not in seen
        seen.add(key)
    assert len(seen) == count_lambda_assignments(n, lam)


@settings(max_examples=40, deadline=None)
@given(st.data(), partitions(max_total=5))
def test_specialize_preserves_validity_and_translation(data, lam):
    g = make_path(3)
    a = data.draw(lambda_assignments(3, lam))
    assert validate_lambda(a)
    sp = specialize(a)
    assert validate_lambda(sp.assignment) and is_special(sp.assignment)
    verdict = solve_list(g, sp.assignment.lists)
    if verdict.colorable:
        assert verify_list_coloring(g, a.lists, sp.translate(verdict.witness))
