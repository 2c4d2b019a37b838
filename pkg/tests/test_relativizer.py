from itertools import product

import pytest

from app.config import PreconditionError
from app.constructions import basic_matrices, bin_ra, function_structure
from app.networks import Network, check_hyperbasis, enumerate_networks, networks_with_label
from app.relativizer import (FALSIFICATION, PartialHypergraph, build_prenetwork_rep, build_square_rep,
                             validate_rep, validate_square_rep)


# ============================================================================
# Hipergrafo n-cuadrado
# ============================================================================
@pytest.fixture(scope="module")
def colourings(functions3):
    return enumerate_networks(functions3, 4)


def test_square_rep_from_colourings(functions3, colourings):
    P, report = build_square_rep(functions3, colourings, 50)
    # 2 redes monocromáticas de un nodo y 14 de dos nodos
    assert P.initial_nodes == 30
    assert P.nodes == 80
    assert P.processed == 50
    assert report.passed, report.to_json()
    assert report.stats["pending"] > 0
    assert report.notes


def test_square_rep_without_repairs(functions3, colourings):
    P, report = build_square_rep(functions3, colourings, 0)
    assert P.nodes == P.initial_nodes == 30
    assert len(P.wide_edges) == 16
    assert report.passed


def test_square_rep_preconditions(functions3):
    with pytest.raises(PreconditionError):
        build_square_rep(functions3, [Network(3, 3, (99,) * 27)], 5)
    single = list(networks_with_label(functions3, 3, (0, 1, 2), 0))
    with pytest.raises(PreconditionError):
        build_square_rep(functions3, single, 5)


def test_square_rep_requires_amalgamation():
    # coloraciones no constantes de 3 nodos: cubren y tienen testigos, pero 011 y 101 solo amalgaman en 111
    S = function_structure(2)
    basis = [Network(2, 3, tuple(2 * c[x] + c[y] for x, y in product(range(3), repeat=2)))
             for c in product((0, 1), repeat=3) if len(set(c)) == 2]
    assert check_hyperbasis(basis, S).failed_checks() == ["hiperbase.amalgama"]
    with pytest.raises(PreconditionError, match="amalgama"):
        build_square_rep(S, basis, 5)


def test_square_rep_clauses(functions3):
    P = PartialHypergraph(functions3, [], nodes=1, initial_nodes=1)
    P.atom_edges[(0, 0, 0)] = 1
    P.conflicts.append({"tupla": [0, 0, 0]})
    assert validate_square_rep(P).failed_checks() == ["hiperarista.diagonal", "hiperarista.sustitucion",
                                                  "hiperarista.unica"]
    P.nodes = 2
    assert "construccion.nodos" in validate_square_rep(P).failed_checks()


# ============================================================================
# Juego de prerredes
# ============================================================================
def test_fair_schedule_on_small_structure(ta4):
    R, report = build_prenetwork_rep(ta4, 9)
    assert report.passed, report.to_json()
    assert R.signature == "TA"
    assert R.played == {1: (0, 0), 2: (1, 2), 3: (3, 3)}
    assert R.nodes == 4
    assert report.stats["elemento"] == report.stats["dicotomia"] == report.stats["cilindro"] == 3
    assert len(R.chain) == 9


def test_validate_rep(ta4):
    R, _ = build_prenetwork_rep(ta4, 9)
    report = validate_rep(R, queries=[1, 4])
    assert report.passed, report.to_json()
    assert report.notes == ["Elemento 4 no cubierto: no se jugó"]
    assert report.stats["edges"] == 6


def test_empty_schedule(ta4):
    R, report = build_prenetwork_rep(ta4, 5, schedule=[])
    assert report.passed
    assert report.stats["rounds"] == 0
    assert R.labels == {}


def test_non_atomic_network_is_a_falsification(falsifying_ca):
    R, report = build_prenetwork_rep(falsifying_ca, 3, schedule=[("elemento", 4)])
    assert R.status == FALSIFICATION
    assert R.falsified
    assert report.failed_checks() == ["juego.falsificacion"]


def test_illegal_moves_are_noted(ta4):
    R, report = build_prenetwork_rep(ta4, 2, schedule=[("dicotomia", (0, 0), 1), ("elemento", 1)])
    assert report.passed
    assert R.moves[0]["ilegal"]
    assert report.notes == ["Jugada ilegal ignorada en la ronda 0: dicotomia"]
    assert R.played == {1: (0, 0)}


def test_signature_preconditions(ta4, falsifying_ca):
    with pytest.raises(PreconditionError):
        build_prenetwork_rep(ta4, 1, signature="CA")
    with pytest.raises(PreconditionError):
        build_prenetwork_rep(falsifying_ca, 1, signature="TA")
    R, _ = build_prenetwork_rep(ta4, 1, signature="PTA")
    assert R.signature == "PTA"


@pytest.mark.slow
def test_fair_game_on_basic_matrices_of_bin():
    S = basic_matrices(bin_ra(3, 1, 1), 3)
    R, report = build_prenetwork_rep(S, 30, signature="PTA")
    assert report.passed, report.to_json()
    assert R.status != FALSIFICATION
    assert not R.falsified
    assert validate_rep(R).passed
