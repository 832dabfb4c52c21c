import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import graphs, lambda_assignments
from lchoose.assignments import (LambdaAssignment, ListAssignment, SymmetricAssignment,
                                 is_symmetric, validate_lambda)
from lchoose.graph import (Graph, VertexPartition, embed_cycle, embed_k4, join_with_parts,
                           make_complete_bipartite, make_cycle, make_path, make_complete)
from lchoose.gsg import is_gsg_coloring, solve_gsg, young_set
from lchoose.partitions import IntPartition, OrderCertificate, leq
from lchoose.reductions import (DualConditionError, ReductionError, build_separator,
                                certificate_from_coloring, color_3chromatic_13,
                                color_eulerian_dual_22, dual_split, find_eulerian_dual,
                                group_major, join_coloring, lambda_to_young_signature,
                                occupancy, symmetric_to_signed, three_list_normalize,
                                two_list_color, two_list_normal_form, z4_to_112)
from lchoose.signed import NK, ZK, is_signed_coloring, solve_signed
from lchoose.solver import solve_k, solve_list, verify_list_coloring

P = IntPartition.of
L = ListAssignment.of


# ---------------------------------------------------------------- separators

def test_separator_for_one_one_against_two():
    inst = build_separator(P(1, 1), P(2))
    assert inst.faithful and inst.family_size == 3
    assert inst.graph.n == 6 and inst.graph.m == 9
    assert validate_lambda(inst.assignment)
    assert not solve_list(inst.graph, inst.assignment.lists).colorable


def test_separator_refuses_comparable_pairs():
    with pytest.raises(ReductionError):
        build_separator(P(2), P(1, 1))
    with pytest.raises(ReductionError):
        build_separator(P(1, 3), P(2, 2), max_vertices=10)


def test_separator_for_one_three_against_two_two():
    inst = build_separator(P(1, 3), P(2, 2))
    assert inst.family_size == 9 and inst.graph.n == 36
    assert validate_lambda(inst.assignment)
    assert not solve_list(inst.graph, inst.assignment.lists).colorable


def test_truncated_family_is_marked():
    inst = build_separator(P(1, 3), P(2, 2), copies=2)
    assert not inst.faithful and inst.graph.n == 8


@pytest.mark.parametrize("lam,lp", [((2,), (1, 1)), ((2, 1), (1, 1, 1)), ((2, 2), (1, 1, 1, 1)),
                                    ((3,), (2, 1)), ((2,), (2,))])
def test_forced_instance_yields_certificate(lam, lp):
    lam, lp = P(*lam), P(*lp)
    assert leq(lam, lp)[0]
    inst = build_separator(lam, lp, force=True)
    v = solve_list(inst.graph, inst.assignment.lists)
    assert v.colorable
    grouping = certificate_from_coloring(inst, v.witness)
    assert grouping is not None
    assert OrderCertificate(lam, lp, grouping).check()
    J = occupancy(inst, [None] * inst.graph.n)
    assert all(not x for x in J)


# ---------------------------------------------------------------- joins

@settings(max_examples=30, deadline=None)
@given(st.data())
def test_join_colouring_respects_owned_groups(data):
    parts = [(make_cycle(4), P(2)), (make_path(2), P(1, 1)), (make_complete(1), P(1))]
    j = join_with_parts([g for g, _ in parts])
    joined_lam = P(2, 1, 1, 1)
    a = data.draw(lambda_assignments(j.graph.n, joined_lam, spare=1))
    f = join_coloring(parts, a)
    assert verify_list_coloring(j.graph, a.lists, f)


def test_join_rejects_mismatched_partition():
    parts = [(make_path(2), P(2)), (make_complete(1), P(1))]
    a = LambdaAssignment.from_groups([{1, 2, 9}, {1, 3, 9}, {2, 3, 9}], [{1, 2, 3}, {9}])
    with pytest.raises(ReductionError):
        join_coloring([(make_path(2), P(1)), (make_complete(1), P(1))], a)
    assert verify_list_coloring(make_complete(3), a.lists, join_coloring(parts, a))


# ---------------------------------------------------------------- signed transfers

@st.composite
def symmetric_lists(draw, n):
    out = []
    for _ in range(n):
        p, q = draw(st.lists(st.integers(1, 5), min_size=2, max_size=2, unique=True))
        out.append(frozenset({p, -p, q, -q}))
    return SymmetricAssignment(tuple(out))


@given(graphs(min_n=2, max_n=7), st.data())
def test_signed_transfer_gives_list_colouring(g, data):
    a = data.draw(symmetric_lists(g.n))
    sg, back = symmetric_to_signed(g, a)
    v = solve_signed(sg, 4, NK)
    if v.colorable:
        assert verify_list_coloring(g, a.lists, back(v.witness))


def test_signed_transfer_input_checks():
    g = make_path(2)
    with pytest.raises(ReductionError):
        symmetric_to_signed(g, SymmetricAssignment.of([{1, -1, 2, -2}]))
    with pytest.raises(ReductionError):
        symmetric_to_signed(g, SymmetricAssignment.of([{1, 2, 3, 4}, {1, -1, 2, -2}]))


@given(graphs(min_n=2, max_n=7), st.data())
def test_z4_transfer_gives_list_colouring(g, data):
    a = data.draw(lambda_assignments(g.n, P(2, 1, 1)))
    sg, back = z4_to_112(g, a)
    v = solve_signed(sg, 4, ZK)
    if v.colorable:
        assert is_signed_coloring(sg, 4, ZK, v.witness)
        assert verify_list_coloring(g, a.lists, back(v.witness))


def test_z4_transfer_needs_the_right_partition():
    a = LambdaAssignment.from_groups([{1, 2}], [{1, 2}])
    with pytest.raises(ReductionError):
        z4_to_112(make_complete(1), a)


# ---------------------------------------------------------------- Young signatures

def test_young_signature_example():
    a = LambdaAssignment.from_groups([{1, 2}, {2, 3}], [{1, 2, 3}])
    sig, back = lambda_to_young_signature(make_path(2), a)
    assert sig.perms[0].one_line() == [2, 1]
    assert group_major(a) == [[1, 2], [2, 3]]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.sampled_from([P(2), P(2, 1), P(1, 1, 1), P(3), P(2, 2)]), st.data())
def test_young_signature_colourings_pull_back(g, lam, data):
    a = data.draw(lambda_assignments(g.n, lam))
    sig, back = lambda_to_young_signature(g, a)
    assert sig.in_set(young_set(lam))
    v = solve_gsg(g, sig, lam.total)
    if v.colorable:
        assert is_gsg_coloring(g, sig, lam.total, v.witness)
        assert verify_list_coloring(g, a.lists, back(v.witness))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6), st.sampled_from([P(2), P(2, 1), P(3)]), st.data())
def test_young_signature_is_exact_for_constant_lists(g, lam, data):
    # With one shared list every position is matched, so the two problems coincide.
    a = data.draw(lambda_assignments(1, lam))
    a = LambdaAssignment(ListAssignment(a.lists * g.n), lam, a.groups)
    sig, _ = lambda_to_young_signature(g, a)
    assert solve_gsg(g, sig, lam.total).colorable == solve_list(g, a.lists).colorable


# ---------------------------------------------------------------- two and three lists

@st.composite
def four_colourable_graph_with_lists(draw, count):
    g = draw(graphs(min_n=2, max_n=7))
    base = solve_k(g, 4)
    assume(base.colorable)
    kinds = [frozenset(draw(st.lists(st.integers(1, 9), min_size=4, max_size=4, unique=True)))
             for _ in range(count)]
    lists = L([draw(st.sampled_from(kinds)) for _ in range(g.n)])
    return g, lists, base.witness


@given(four_colourable_graph_with_lists(2))
def test_two_list_colouring_always_succeeds(case):
    g, lists, base = case
    f = two_list_color(g, lists, base)
    assert verify_list_coloring(g, lists, f)


def test_two_list_normal_form_shape():
    norm, back = two_list_normal_form(L([{3, 5, 7, 9}, {5, 7, 9, 11}]))
    assert norm.lists == (frozenset({1, 2, 3, 4}), frozenset({2, 3, 4, 5}))
    assert back[0][1] == 3 and back[1][5] == 11
    with pytest.raises(ReductionError):
        two_list_normal_form(L([{1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6}]))


def test_three_lists_symmetric_case():
    g = make_path(3)
    norm = three_list_normalize(g, L([{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}]))
    assert norm.case == "symmetric" and not norm.steps
    assert dict(norm.renaming) == {1: 1, 2: -1, 3: 3, 4: -3, 5: 5, 6: -5}
    assert is_symmetric(norm.symmetric)


def test_three_lists_112_case():
    norm = three_list_normalize(make_path(3), L([{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}]))
    assert norm.case == "112"
    la = norm.lambda_assignment
    assert validate_lambda(la)
    assert sorted(sorted(grp) for grp, k in zip(la.groups, la.partition.parts) if k == 1) == [[1], [2]]


def test_three_lists_need_three_distinct_lists():
    with pytest.raises(ReductionError):
        three_list_normalize(make_path(2), L([{1, 2, 3, 4}, {1, 2, 3, 5}]))


@settings(max_examples=80, deadline=None)
@given(four_colourable_graph_with_lists(3))
def test_three_list_normalization_round_trip(case):
    g, lists, _ = case
    assume(len(set(lists.lists)) == 3)
    norm = three_list_normalize(g, lists)
    assert norm.case in ("112", "symmetric", "two-lists")
    # Each rewritten list drops a colour it owns alone and takes one from the others.
    for step in norm.steps:
        assert step.removed in step.old and step.added not in step.old
    if norm.case == "symmetric":
        v = solve_list(g, norm.symmetric.lists)
    else:
        v = solve_list(g, norm.lists)
    if v.colorable:
        assert verify_list_coloring(g, lists, norm.translate_back(v.witness))


# ---------------------------------------------------------------- 3-chromatic {1,3}

@settings(max_examples=40, deadline=None)
@given(st.data())
def test_three_chromatic_one_three_colouring(data):
    g = make_complete_bipartite(2, 3)
    # Add an apex class: the third class is adjacent to everything.
    n = g.n + 2
    edges = list(g.edges) + [(v, x) for x in (5, 6) for v in range(5)]
    h = Graph.from_edges(n, edges)
    parts = VertexPartition.of([[0, 1], [2, 3, 4], [5, 6]])
    a = data.draw(lambda_assignments(n, P(3, 1)))
    f = color_3chromatic_13(h, parts, a)
    assert verify_list_coloring(h, a.lists, f)


def test_three_chromatic_rejects_bad_classes():
    a = LambdaAssignment.from_groups([{1, 2, 3, 9}] * 3, [{1, 2, 3}, {9}])
    with pytest.raises(ReductionError):
        color_3chromatic_13(make_complete(3), VertexPartition.of([[0, 1], [2], []]), a)


# ---------------------------------------------------------------- Eulerian dual subgraphs

def test_k4_dual_four_cycle_splits():
    e = embed_k4()
    split = dual_split(e, (0, 1, 4, 5))
    assert sorted(split.X + split.Y) == [0, 1, 2, 3]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_k4_two_two_colouring(data):
    e = embed_k4()
    a = data.draw(lambda_assignments(4, P(2, 2)))
    f = color_eulerian_dual_22(e, (0, 1, 4, 5), a)
    assert verify_list_coloring(e.graph, a.lists, f)


@pytest.mark.parametrize("h", [(0, 1, 2), ()])
def test_k4_rejects_region_violations(h):
    with pytest.raises(DualConditionError) as err:
        dual_split(embed_k4(), h)
    assert err.value.kind == "region"


def test_dual_error_kinds():
    with pytest.raises(DualConditionError) as err:
        dual_split(embed_k4(), (0,))
    assert err.value.kind == "odd-degree"
    with pytest.raises(DualConditionError) as err:
        dual_split(embed_k4(), (99,))
    assert err.value.kind == "not-spanning"


def test_even_cycle_dual_split():
    e = embed_cycle(4)
    split = dual_split(e, (0, 2))
    assert len(split.regions) == 2 and set(split.region_side) == {0, 1}


def test_dual_search_finds_valid_subgraph():
    e = embed_k4()
    h = find_eulerian_dual(e)
    assert h is not None
    dual_split(e, h)
