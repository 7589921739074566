import json
from importlib import resources

import pytest
from hypothesis import given

from strategies import graphs

from qgraph.errors import ParseError, ValidationError
from qgraph.io import graph_to_json, load_graph, parse_graph_file, save_graph

MINIMAL = b'{"name": "S1^2", "vertices": [{"id": 1, "bc": "neumann"}], "edges": [], "leads": [1, 1]}'


def doc(**over):
    d = {
        "name": "path",
        "vertices": [{"id": 1, "bc": "neumann"}, {"id": 2, "bc": "neumann"}, {"id": 3, "bc": "dirichlet"}],
        "edges": [[1, 2, 1], [2, 3, 2]],
        "leads": [1],
    }
    d.update(over)
    return json.dumps(d)


def test_minimal_document():
    g = parse_graph_file(MINIMAL)
    assert (g.n_vertices, g.n_edges, g.leads) == (1, 0, (1, 1))


def test_default_bc_and_str_input():
    g = parse_graph_file('{"name": "x", "vertices": [{"id": 1}], "edges": [], "leads": [1]}')
    assert g.bc(1).value == "neumann"


@pytest.mark.parametrize(
    "text, where",
    [
        (doc(edges=[[1, 2, 0], [2, 3, 1]]), "edges[0][2]"),
        (doc(edges=[[1, 2, 1.5], [2, 3, 1]]), "edges[0][2]"),
        (doc(edges=[[1, 2, True], [2, 3, 1]]), "edges[0][2]"),
        (doc(edges=[[1, 2], [2, 3, 1]]), "edges[0]"),
        (doc(length_units=0), "length_units"),
        (doc(vertices=[{"id": 1}, {"id": 1}, {"id": 2}]), "duplicate vertex id"),
        (doc(vertices=[{"id": 1, "colour": "red"}, {"id": 2}, {"id": 3}]), "vertices[0]"),
        (doc(vertices=[{"id": "1"}, {"id": 2}, {"id": 3}]), "vertices[0].id"),
        (doc(vertices=[{"id": 1, "bc": "robin"}, {"id": 2}, {"id": 3}]), "vertices[0].bc"),
        (doc(leads=["1"]), "leads[0]"),
        (doc(leads=3), "leads"),
        ('{"name": "a", "name": "b", "vertices": [], "edges": [], "leads": []}', "duplicate key"),
        ('{"name": "a"', "line 1"),
        ("[1, 2]", "top level"),
        ('{"name": "a", "vertices": [], "edges": []}', "missing"),
    ],
)
def test_parse_errors_name_the_field(text, where):
    with pytest.raises(ParseError, match=None) as info:
        parse_graph_file(text)
    assert where in str(info.value)


def test_non_utf8():
    with pytest.raises(ParseError):
        parse_graph_file(b"\xff\xfe{}")


def test_structural_problems_surface_as_validation_errors():
    with pytest.raises(ValidationError):
        parse_graph_file(doc(edges=[[1, 2, 1]]))  # vertex 3 disconnected


def test_shipped_q_file():
    data = (resources.files("qgraph") / "data" / "catalog" / "v1" / "Q.json").read_bytes()
    g = parse_graph_file(data)
    assert (g.n_vertices, g.n_edges, g.n_channels) == (6, 8, 2)
    assert set(g.degrees().values()) == {3}


def test_save_and_load(tmp_path):
    g = parse_graph_file(doc())
    save_graph(g, tmp_path / "g.json")
    assert load_graph(tmp_path / "g.json") == g


@given(graphs(dead_ends=True))
def test_round_trip_is_idempotent(g):
    once = graph_to_json(g)
    assert graph_to_json(parse_graph_file(once)) == once
    assert parse_graph_file(once) == g
