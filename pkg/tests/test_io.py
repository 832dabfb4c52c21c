import json

import pytest
from hypothesis import given

from helpers import graphs
from lchoose.assignments import LambdaAssignment, ListAssignment
from lchoose.graph import embed_k4, faces
from lchoose.gsg import symmetric_group, young_set
from lchoose.io import (InputError, assignment_from_json, assignment_to_json, dumps,
                        graph_from_json, graph_to_json, parse_assignment, parse_dimacs, parse_graph,
                        permset_from_json, permset_to_json, signed_from_json, signed_to_json)
from lchoose.partitions import IntPartition


def test_dimacs():
    g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g.n == 3 and g.m == 3
    with pytest.raises(InputError) as err:
        parse_dimacs("p edge 3 1\ne 1 4\n", source="x.col")
    assert err.value.line == 2 and err.value.source == "x.col"
    with pytest.raises(InputError):
        parse_dimacs("p edge 3 2\ne 1 2\n")
    with pytest.raises(InputError):
        parse_dimacs("e 1 2\n")


@given(graphs(max_n=8))
def test_graph_json_round_trip(g):
    assert graph_from_json(json.loads(dumps(graph_to_json(g)))) == g


def test_rotation_round_trip():
    e = embed_k4()
    obj = graph_to_json(e)
    assert all(isinstance(i, int) and 0 <= i < 6 for row in obj["rotation"] for i in row)
    back = graph_from_json(obj)
    assert back.rotation == e.rotation and len(faces(back)) == 4


def test_graph_json_errors():
    with pytest.raises(InputError) as err:
        graph_from_json({"edges": []})
    assert err.value.field == "n"
    with pytest.raises(InputError):
        graph_from_json({"n": 2, "edges": [[0, 1], [1, 0]]})
    with pytest.raises(InputError):
        graph_from_json({"n": 2, "edges": [[0, 2]]})
    with pytest.raises(InputError):
        graph_from_json({"n": 2, "edges": [[0, 1]], "rotation": [[0], [5]]})
    with pytest.raises(InputError):
        graph_from_json({"n": True, "edges": []})


def test_assignment_forms():
    a = assignment_from_json({"lists": {"0": [1, 2], "1": [2, 3]}})
    b = assignment_from_json({"lists": [[1, 2], [2, 3]]})
    assert isinstance(a, ListAssignment) and a == b
    la = assignment_from_json({"lists": [[1, 5], [2, 5]], "groups": [[1, 2], [5]], "lambda": "1+1"})
    assert isinstance(la, LambdaAssignment) and la.partition == IntPartition.of(1, 1)
    assert assignment_from_json(assignment_to_json(la)) == la


def test_assignment_errors():
    with pytest.raises(InputError):
        assignment_from_json({"lists": [[1, 1]]})
    with pytest.raises(InputError):
        assignment_from_json({"lists": [[1, 2]]}, n=2)
    with pytest.raises(InputError) as err:
        assignment_from_json({"lists": [[1, 2]], "groups": [[1, 2], [2, 3]]})
    assert err.value.field == "groups"
    with pytest.raises(InputError):
        assignment_from_json({"lists": [[1, 2], [1, 3]], "groups": [[1, 2, 3]], "lambda": "3"})
    with pytest.raises(InputError):
        assignment_from_json({"lists": [[1, 2]], "lambda": "2"})
    with pytest.raises(InputError):
        assignment_from_json({"lists": {"0": [1], "2": [1]}})


def test_signed_defaults_to_positive():
    sg = signed_from_json({"n": 3, "edges": [[0, 1], [1, 2]], "signs": [[2, 1, -1]]})
    assert sg.sigma == (1, -1)
    assert signed_from_json(signed_to_json(sg)) == sg
    with pytest.raises(InputError):
        signed_from_json({"n": 2, "edges": [[0, 1]], "signs": [[0, 1, 2]]})
    with pytest.raises(InputError):
        signed_from_json({"n": 3, "edges": [[0, 1]], "signs": [[0, 2, -1]]})


def test_permset_forms():
    s = permset_from_json({"k": 3, "perms": ["(12)", "2,1,3", [1, 3, 2]]})
    assert len(s) == 2
    assert permset_from_json(permset_to_json(symmetric_group(3))) == symmetric_group(3)
    closed = permset_from_json({"perms": ["(123)"], "close": True})
    assert len(closed) == 2
    with pytest.raises(InputError):
        permset_from_json({"perms": ["(123)"]})
    with pytest.raises(InputError):
        permset_from_json({"perms": ["(1x)"]})
    ys = young_set(IntPartition.of(2, 1)).members
    assert permset_from_json(permset_to_json(ys)) == ys


def test_files(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"n": 2, "edges": [[0, 1]]}')
    assert parse_graph(p).m == 1
    with pytest.raises(InputError) as err:
        parse_graph(tmp_path / "missing.json")
    assert err.value.to_json()["error"] == "input"
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2,\n "edges": [[0, 1]')
    with pytest.raises(InputError) as err:
        parse_graph(bad)
    assert err.value.line == 2
    lists = tmp_path / "l.json"
    lists.write_text('{"lists": [[1, 2], [1, 2]]}')
    assert len(parse_assignment(lists, 2)) == 2


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'
