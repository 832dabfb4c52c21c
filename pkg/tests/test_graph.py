import pytest
from hypothesis import given, settings, strategies as st

from helpers import graphs
from lchoose.graph import (Graph, PlaneBuilder, VertexPartition, canonical_form, disjoint_union,
                           dual, embed_cycle, embed_k4, faces, graphs_up_to_iso, graphs_with_edges,
                           is_isomorphic, join, join_with_parts, line_graph, make_complete,
                           make_complete_bipartite, make_complete_multipartite, make_cycle,
                           make_empty, make_path, make_wheel)


def test_complete_graph_sizes():
    assert make_complete(0).n == 0 and make_complete(0).m == 0
    assert make_complete(4).m == 6
    k6 = make_complete(6)
    assert k6.m == 15 and all(k6.degree(v) == 5 for v in range(6))


def test_cycle_and_bipartite():
    assert make_cycle(3) == make_complete(3)
    assert make_complete_bipartite(3, 3).m == 9
    k24 = make_complete_bipartite(2, 4)
    assert k24.m == 8
    assert sorted(k24.degree(v) for v in range(6)) == [2, 2, 2, 2, 4, 4]
    with pytest.raises(ValueError):
        make_cycle(2)


def test_joins():
    assert join([make_complete(1), make_complete(1)]) == make_complete(2)
    assert is_isomorphic(join([make_complete(2), make_complete(2)]), make_complete(4))
    assert join([make_empty(3), make_empty(3)]) == make_complete_bipartite(3, 3)
    j = join_with_parts([make_path(2), make_empty(1)])
    assert j.part_of == (0, 0, 1) and j.offsets == (0, 2)


def test_line_graphs():
    assert line_graph(make_path(3)).graph.edges == make_complete(2).edges
    assert is_isomorphic(line_graph(make_complete(3)).graph, make_complete(3))
    lk4 = line_graph(make_complete(4)).graph
    assert lk4.n == 6 and all(lk4.degree(v) == 4 for v in range(6))


def test_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_k_core_and_components():
    g = disjoint_union([make_complete(4), make_path(3)])
    assert g.k_core(3) == [0, 1, 2, 3]
    assert len(g.components()) == 2
    assert make_wheel(5).k_core(3) == list(range(6))


def test_vertex_partition():
    vp = VertexPartition.of([[0, 2], [1, 3]])
    vp.check(4)
    assert vp.is_independent(make_cycle(4))
    assert not VertexPartition.of([[0, 1], [2, 3]]).is_independent(make_cycle(4))
    with pytest.raises(ValueError):
        VertexPartition.of([[0, 1], [1, 2]]).check(3)


def test_iso_class_counts():
    # Graph counts up to isomorphism on 1..5 vertices.
    assert [len(graphs_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_graphs_with_edges_have_no_isolated_vertices():
    for g in graphs_with_edges(4):
        assert g.m <= 4 and all(g.degree(v) > 0 for v in range(g.n))


@given(graphs(max_n=6), st.randoms())
def test_canonical_form_is_relabelling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@given(graphs(max_n=7))
def test_line_graph_edge_count(g):
    lg = line_graph(g).graph
    assert lg.n == g.m
    assert lg.m == sum(g.degree(v) * (g.degree(v) - 1) // 2 for v in range(g.n))


@given(graphs(max_n=7))
def test_spanning_forest_size(g):
    assert len(g.spanning_forest()) == g.n - len(g.components())


def test_embedded_faces():
    tri = embed_cycle(3)
    assert len(faces(tri)) == 2
    k4 = embed_k4()
    assert len(faces(k4)) == 4 and k4.is_planar_embedding()
    d = dual(tri)
    assert d.n == 2 and len(d.edges) == 3 and d.degrees() == [3, 3]


def test_dual_of_even_cycle_is_two_vertices_with_parallel_edges():
    d = dual(embed_cycle(4))
    assert d.n == 2 and len(d.edges) == 4 and {tuple(sorted(e)) for e in d.edges} == {(0, 1)}


def test_face_walks_cover_every_dart():
    e = embed_k4()
    darts = [(f[i], f[(i + 1) % len(f)]) for f in e.face_list for i in range(len(f))]
    assert sorted(darts) == sorted(e.graph.arcs())


@settings(deadline=None, max_examples=40)
@given(st.lists(st.integers(0, 100), min_size=1, max_size=12))
def test_stacking_keeps_euler_formula(choices):
    b = PlaneBuilder.triangle()
    for c in choices:
        fl = b.faces()
        f = fl[c % len(fl)]
        b.add_vertex_in_face(f, f)
    e = b.freeze()
    assert e.is_planar_embedding()
    assert len(e.face_list) == 2 + 2 * len(choices)


def test_multipartite():
    assert make_complete_multipartite([2, 2, 2, 2]).m == 24
