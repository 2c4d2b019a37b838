import os

from app.coloured_graphs import ColouredGraph, green, green0, white
from app.dot_export import coloured_graph_to_dot, graph_to_dot, network_to_dot, render
from app.graphs import cycle
from app.networks import Network


def test_graph_source():
    dot = graph_to_dot(cycle(3), title="C3", colouring=[0, 1, 2])
    assert "0 -- 1" in dot.source
    assert "1 -- 2" in dot.source
    assert "label=C3" in dot.source


def test_coloured_graph_source():
    M = ColouredGraph(3, (0, 1, 2), {(0, 1): white(0), (0, 2): green0(0), (1, 2): green(1)},
                      {(0, 1): frozenset({0, 1})})
    source = coloured_graph_to_dot(M).source
    assert "0 -> 1" in source
    assert "label=w_0" in source
    assert "color=gray60" in source
    assert "y[0, 1]" in source


def test_network_source():
    N = Network(2, 2, (0, 1, 1, 0))
    source = network_to_dot(N, ("1'", "a")).source
    assert "0 -> 1" in source
    assert "1 -> 0" in source
    assert "label=a" in source


def test_render_dot_file(tmp_path):
    path = str(tmp_path / "dot" / "c5.dot")
    ok, result = render(graph_to_dot(cycle(5)), path)
    assert ok
    assert result == path
    assert os.path.exists(path)
