import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import graphs
from lchoose.graph import make_complete, make_cycle, make_path
from lchoose.gsg import (ALL_COLORABLE, INCONCLUSIVE, SOME_FAIL, Permutation, PermSet,
                         PermSignature, conjugate, corpus_check, cyclic_group, decide_s_colorable,
                         fixes_each_point, identity_set, is_gsg_coloring, is_inverse_closed,
                         parse_permutation, solve_gsg, signatures, switch_vertex,
                         symmetric_group, young_set)
from lchoose.oracles import naive_gsg_all
from lchoose.partitions import IntPartition
from lchoose.solver import solve_k

perms3 = st.permutations(range(3)).map(lambda p: Permutation(tuple(p)))


def test_parsing():
    p = parse_permutation("(12)(34)")
    assert p.one_line() == [2, 1, 4, 3]
    assert parse_permutation("2,1,4,3") == p
    assert parse_permutation("(12)", k=4).one_line() == [2, 1, 3, 4]
    assert str(p) == "(12)(34)"
    assert str(Permutation.identity(3)) == "()"
    with pytest.raises(ValueError):
        parse_permutation("(12)x")
    with pytest.raises(ValueError):
        parse_permutation("1,1")
    with pytest.raises(ValueError):
        parse_permutation("(11)")


def test_point_fixing_and_inverse_closure():
    members = [parse_permutation(t, 4) for t in ("(12)", "(34)", "(12)(34)")]
    assert fixes_each_point(members) and is_inverse_closed(members)
    three = parse_permutation("(123)")
    assert not is_inverse_closed([three])
    assert len(PermSet.of([three], close=True)) == 2
    with pytest.raises(ValueError):
        PermSet(3, (three,))
    assert fixes_each_point(cyclic_group(3))
    rotations = [parse_permutation("(123)"), parse_permutation("(132)")]
    assert not fixes_each_point(rotations)


def test_standard_sets():
    assert len(symmetric_group(3)) == 6 and symmetric_group(3).is_group
    assert len(cyclic_group(4)) == 4 and cyclic_group(4).is_group
    ys = young_set(IntPartition.of(2, 2))
    assert ys.size == 4 and ys.blocks == ((1, 2), (3, 4))
    assert young_set(IntPartition.of(3, 1)).size == 6


def test_even_cycle_fails_under_all_of_s2():
    d = decide_s_colorable(make_cycle(4), symmetric_group(2))
    assert d.status == SOME_FAIL
    assert not solve_gsg(make_cycle(4), d.failing, 2).colorable
    assert d.failing.in_set(symmetric_group(2))


def test_identity_set_is_ordinary_colouring():
    for g in (make_cycle(5), make_complete(4), make_path(4)):
        for k in (2, 3, 4):
            assert bool(decide_s_colorable(g, identity_set(k))) == solve_k(g, k).colorable


def test_arc_convention():
    g = make_path(2)
    p = parse_permutation("2,3,1")
    sig = PermSignature.from_arcs(g, {(1, 0): p})
    assert sig.arc(1, 0) == p and sig.arc(0, 1) == p.inverse()
    # Edge 0-1 with perm q forbids f(1) == q(f(0)).
    q = sig.perms[0]
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            assert is_gsg_coloring(g, sig, 3, [a, b]) == (b != q(a))
    with pytest.raises(ValueError):
        PermSignature.from_arcs(g, {(0, 1): p, (1, 0): p})


def test_budget_and_reduction_guard():
    d = decide_s_colorable(make_complete(4), symmetric_group(3), budget=10)
    assert d.status == INCONCLUSIVE
    non_group = PermSet.of([parse_permutation("(12)", 3), parse_permutation("(23)", 3)])
    with pytest.raises(ValueError):
        decide_s_colorable(make_cycle(3), non_group, reduce=True)


def test_corpus_check_stops_at_first_failure():
    rep = corpus_check(symmetric_group(2), [make_path(3), make_cycle(4), make_cycle(3)])
    assert rep.counterexample[0] == 1 and rep.checked == 2
    ok = corpus_check(symmetric_group(3), [make_path(3), make_cycle(4)])
    assert ok.counterexample is None and "no counterexample" in ok.message


@st.composite
def signature_and_graph(draw):
    g = draw(graphs(max_n=5))
    perms = draw(st.lists(perms3, min_size=g.m, max_size=g.m))
    return g, PermSignature(g, tuple(perms))


@given(signature_and_graph(), st.data())
def test_vertex_switching_preserves_colourings(gs, data):
    g, sig = gs
    x = data.draw(st.integers(0, g.n - 1))
    pi = data.draw(perms3)
    switched = switch_vertex(sig, x, pi)
    v = solve_gsg(g, sig, 3)
    assert solve_gsg(g, switched, 3).colorable == v.colorable
    if v.colorable:
        f = list(v.witness)
        f[x] = pi(f[x])
        assert is_gsg_coloring(g, switched, 3, f)


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=5), st.sampled_from(["sym2", "sym3", "cyc3", "young21"]))
def test_decision_matches_matrix_oracle(g, name):
    s = {"sym2": symmetric_group(2), "sym3": symmetric_group(3), "cyc3": cyclic_group(3),
         "young21": young_set(IntPartition.of(2, 1)).members}[name]
    assume(len(s) ** g.m <= 20000)
    reduced = decide_s_colorable(g, s, reduce=True)
    full = decide_s_colorable(g, s, reduce=False)
    assert reduced.status == full.status
    assert (reduced.status == ALL_COLORABLE) == naive_gsg_all(g, s, s.k)


@settings(max_examples=20, deadline=None)
@given(graphs(max_n=4), perms3)
def test_conjugate_sets_decide_alike(g, pi):
    s = PermSet.of([parse_permutation("(12)", 3)])
    assert bool(decide_s_colorable(g, s)) == bool(decide_s_colorable(g, conjugate(s, pi)))


def test_signature_enumeration_size():
    assert len(list(signatures(make_path(3), symmetric_group(2)))) == 4
