import json

import pytest

from app.coloured_graphs import SHADE, ColouredGraph, green, green0, red, white
from app.graphs import cycle
from app.networks import enumerate_networks
from app.pebble_structures import linear
from app.serialization import (SerializationError, coloured_graph_from_dict, graph_from_text, graph_to_dict,
                               graph_to_text, load_graph, load_structure, network_from_dict, parse_colour,
                               pebble_from_dict, pebble_to_dict, read_json, structure_from_dict,
                               structure_to_dict, write_json)


def test_ra_structure_document(pair_ra):
    data = structure_to_dict(pair_ra)
    assert data["type"] == "ra"
    assert data["atoms"] == ["1'", "a"]
    assert structure_from_dict(data) == pair_ra


def test_ca_structure_document(ta4, tmp_path):
    data = structure_to_dict(ta4)
    assert data["flavor"] == "TA"
    assert data["diag"] == {"0,1": [0]}
    assert data["subst"] == {"0,1": [0, 1]}
    path = write_json(data, str(tmp_path / "estructuras" / "ta4.json"))
    assert load_structure(path) == ta4


def test_structure_kind_is_inferred(pair_ra):
    data = structure_to_dict(pair_ra)
    del data["type"]
    assert structure_from_dict(data) == pair_ra


@pytest.mark.parametrize("data", [
    [],
    {"type": "ra", "atoms": ["1'"]},
    {"type": "ra", "atoms": ["1'", "a"], "identity": [0], "converse": [0, 1], "consistent": [[0, 0, 5]]},
    {"type": "ca", "atoms": ["p"], "diag": {"0;1": [0]}, "cyl": [[[0]], [[0]]]},
    {"type": "ca", "atoms": ["p"], "diag": {"0,1": [0]}, "cyl": [[[0]], [[0]]], "flavor": "XX"},
    {"type": "bool", "atoms": ["p"]},
])
def test_malformed_structures(data):
    with pytest.raises(SerializationError):
        structure_from_dict(data)


def test_network_document(functions3):
    N = enumerate_networks(functions3, 3)[5]
    data = json.loads(json.dumps(N.to_dict()))
    assert network_from_dict(data) == N
    del data["labels"]["(2, 2, 2)"]
    with pytest.raises(SerializationError):
        network_from_dict(data)


@pytest.mark.parametrize("name, colour", [
    ("r_0_1", red(0, 1)),
    ("g0_1", green0(1)),
    ("g_2", green(2)),
    ("w_0", white(0)),
    ("rho", SHADE),
])
def test_parse_colour(name, colour):
    assert parse_colour(name) == colour


@pytest.mark.parametrize("name", ["x_1", "r_1", "g_a"])
def test_unknown_colours(name):
    with pytest.raises(SerializationError):
        parse_colour(name)


def test_coloured_graph_document():
    M = ColouredGraph(3, (0, 1, 2), {(0, 1): white(0), (0, 2): green0(0), (1, 2): red(1, 0)},
                      {(0, 1): frozenset({0, 1})})
    assert coloured_graph_from_dict(json.loads(json.dumps(M.to_dict()))) == M


def test_graph_text_format(tmp_path):
    text = "4\n0 1\n# comentario\n2 3  # fin\n\n3 3\n"
    G = graph_from_text(text)
    assert G.node_count == 4
    assert G.edges == frozenset({(0, 1), (2, 3)})
    assert graph_from_text(graph_to_text(cycle(5))) == cycle(5)
    path = tmp_path / "c5.txt"
    path.write_text(graph_to_text(cycle(5)), encoding="utf-8")
    assert load_graph(str(path)) == cycle(5)
    assert graph_to_dict(cycle(3)) == {"nodes": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


@pytest.mark.parametrize("text", ["", "3\n0 1 2\n", "2\n0 5\n", "tres\n"])
def test_malformed_edge_lists(text):
    with pytest.raises(SerializationError):
        graph_from_text(text)


def test_pebble_document():
    A = linear(3)
    assert pebble_from_dict(pebble_to_dict(A)) == A
    with pytest.raises(SerializationError):
        pebble_from_dict({"size": 2, "relations": {"E": [[0, 1]]}})


def test_invalid_json_file(tmp_path):
    path = tmp_path / "roto.json"
    path.write_text("{\"atoms\": [", encoding="utf-8")
    with pytest.raises(SerializationError) as info:
        read_json(str(path))
    assert info.value.source == str(path)
    with pytest.raises(SerializationError):
        read_json(str(tmp_path / "no_existe.json"))
