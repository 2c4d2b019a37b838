import pytest

from app.coloured_graphs import (SHADE, ColouredGraph, Cone, StrategyParams, colour_name, extend_coloured_graph,
                                 find_cones, green, green0, red, set_colour, validate_coloured_graph, white)
from app.pebble_structures import linear

GREENS = linear(2)
REDS = linear(2)


def cone_graph(yellow_tints=(0, 1)):
    """Ápice 2 sobre la base (0, 1) con tinte 0; la base no es verde"""
    edges = {(0, 1): white(0), (0, 2): green0(0), (1, 2): green(1)}
    return ColouredGraph(3, (0, 1, 2), edges, {(0, 1): frozenset(yellow_tints)})


def triangle(c01, c12, c02, yellows=None):
    return ColouredGraph(3, (0, 1, 2), {(0, 1): c01, (1, 2): c12, (0, 2): c02}, yellows or {})


def failed(M, allow_shade=False):
    return validate_coloured_graph(M, GREENS, REDS, allow_shade).failed_checks()


# ============================================================================
# Colores
# ============================================================================
def test_colour_names():
    assert colour_name(red(0, 1)) == "r_0_1"
    assert colour_name(green(1)) == "g_1"
    assert colour_name(green0(0)) == "g0_0"
    assert colour_name(white(0)) == "w_0"
    assert colour_name(SHADE) == "rho"


def test_reds_are_read_backwards():
    M = ColouredGraph(3, (0, 1), {(0, 1): red(0, 1)})
    assert M.colour(1, 0) == red(1, 0)
    assert M.colour(0, 1) == red(0, 1)
    edges = {}
    set_colour(edges, 2, 1, red(0, 1))
    assert edges == {(1, 2): red(1, 0)}


# ============================================================================
# Validación
# ============================================================================
def test_cone_graph_is_valid():
    M = cone_graph()
    report = validate_coloured_graph(M, GREENS, REDS)
    assert report.passed, report.to_json()
    assert report.stats["cones"] == 1
    assert find_cones(M) == [Cone(2, (0, 1), 0)]


def test_cone_tint_must_be_yellow():
    assert failed(cone_graph(yellow_tints=(1,))) == ["cono.amarillo"]


def test_shade_edges():
    M = triangle(SHADE, SHADE, SHADE, {(0, 1): frozenset(), (0, 2): frozenset(), (1, 2): frozenset()})
    assert failed(M, allow_shade=True) == []
    assert failed(M) == ["grafo.sombra"]


def test_palette_and_completeness():
    assert failed(triangle(green(2), green(1), green0(0))) == ["grafo.paleta"]
    M = ColouredGraph(3, (0, 1, 2), {(0, 1): white(0), (1, 2): white(0)})
    assert failed(M) == ["grafo.completo"]


@pytest.mark.parametrize("c01, c12, c02, check", [
    (green0(0), green0(0), green0(0), "triangulo.verde"),
    (green(1), green(1), white(1), "triangulo.verde_blanco"),
    (green0(0), green0(1), white(0), "triangulo.g0_w0"),
    (green0(1), green0(0), red(0, 1), "triangulo.g0_rojo"),
    (red(0, 0), red(0, 0), red(1, 1), "triangulo.rojos"),
])
def test_forbidden_triangles(c01, c12, c02, check):
    assert check in failed(triangle(c01, c12, c02))


def test_order_preserving_reds_are_allowed():
    M = triangle(green0(0), green0(1), red(0, 1))
    assert "triangulo.g0_rojo" not in failed(M)


def test_yellow_labels():
    M = cone_graph()
    wrong_shape = ColouredGraph(3, M.nodes, M.edges, {**M.yellows, (0,): frozenset()})
    assert "amarillo.forma" in failed(wrong_shape)
    on_green = ColouredGraph(3, M.nodes, M.edges, {**M.yellows, (0, 2): frozenset()})
    assert "amarillo.verde" in failed(on_green)
    bad_tint = ColouredGraph(3, M.nodes, M.edges, {(0, 1): frozenset({0, 5})})
    assert "amarillo.paleta" in failed(bad_tint)
    assert failed(ColouredGraph(3, M.nodes, M.edges, {})) == ["amarillo.total"]


# ============================================================================
# Extensión
# ============================================================================
def test_matching_cones_get_a_red():
    params = StrategyParams(red_map={0: 0, 1: 1})
    result, report = extend_coloured_graph(cone_graph(), (0, 1), 3, {0: green0(1), 1: green(1)},
                                           GREENS, REDS, params)
    assert result is not None, report.to_json()
    assert result.colour(2, 3) == red(0, 1)
    assert report.stats["rojos"] == 1
    assert result.yellows[(2, 3)] == frozenset()
    assert len(find_cones(result)) == 2


def test_missing_red_index():
    result, report = extend_coloured_graph(cone_graph(), (0, 1), 3, {0: green0(1), 1: green(1)},
                                           GREENS, REDS, StrategyParams(red_map={0: 0}))
    assert result is None
    assert report.failed_checks() == ["extension.sin_indice"]


def test_otherwise_the_least_white():
    result, report = extend_coloured_graph(cone_graph(), (0, 1), 3, {0: white(0), 1: white(0)},
                                           GREENS, REDS)
    assert result is not None, report.to_json()
    assert result.colour(2, 3) == white(1)
    assert report.stats["blancos"] == 1
    assert validate_coloured_graph(result, GREENS, REDS).passed


def test_illegal_moves():
    M = cone_graph()
    _, report = extend_coloured_graph(M, (0, 1), 2, {0: white(0), 1: white(0)}, GREENS, REDS)
    assert report.failed_checks() == ["extension.nodo"]
    _, report = extend_coloured_graph(M, (0, 1), 3, {0: white(0)}, GREENS, REDS)
    assert report.failed_checks() == ["extension.cara"]
