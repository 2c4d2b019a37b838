from itertools import product

import pytest

from app.atom_structures import StructureError
from app.constructions import basic_matrices, enumerate_basic_matrices, flexible_ra
from app.networks import (Hypernetwork, Network, check_hyperbasis, enumerate_networks, extend_network,
                          matrix_hypernetwork, network_from_matrix, networks_with_label, tuple_index,
                          uniform_hypernetwork, validate_hypernetwork, validate_network)


def colouring_network(colours):
    """Red sobre ³2 inducida por una 2-coloración de los nodos"""
    k = len(colours)
    labels = tuple(4 * colours[x] + 2 * colours[y] + colours[z] for x, y, z in product(range(k), repeat=3))
    return Network(3, k, labels)


def test_tuple_index():
    assert tuple_index((1, 0, 2), 3) == 11
    assert tuple_index((), 3) == 0


def test_network_needs_every_tuple():
    with pytest.raises(StructureError):
        Network(3, 2, (0,) * 7)


# ============================================================================
# Validación
# ============================================================================
def test_colouring_networks_are_valid(functions3):
    N = colouring_network((0, 1, 1))
    report = validate_network(N, functions3)
    assert report.passed, report.to_json()
    assert report.stats["tuples"] == 27
    assert N.label((0, 1, 2)) == 0b011


def test_broken_diagonal(functions3):
    N = colouring_network((0, 0, 0))
    broken = Network(3, 3, (1,) + N.labels[1:])
    assert "red.diagonal" in validate_network(broken, functions3).failed_checks()


def test_dimension_and_atom_range(functions3):
    assert validate_network(Network(2, 2, (0, 0, 0, 0)), functions3).failed_checks() == ["red.dimension"]
    assert validate_network(Network(3, 3, (99,) * 27), functions3).failed_checks() == ["red.atomo"]


def test_node_operations():
    N = colouring_network((1, 0, 0))
    assert N.canonical() == colouring_network((0, 0, 1))
    assert N.restrict([1, 2]) == colouring_network((0, 0))
    assert N.delete_node(0) == colouring_network((0, 0))
    assert N.permute([1, 0, 2]) == colouring_network((0, 1, 0))
    assert N.compose([0, 0, 0]) == colouring_network((1, 1, 1))
    assert N.to_dict()["labels"]["(0, 0, 0)"] == 7


# ============================================================================
# Enumeración y extensión
# ============================================================================
def test_enumerate_networks(functions3):
    three = enumerate_networks(functions3, 3)
    assert len(three) == 8
    assert len(enumerate_networks(functions3, 4)) == 16
    assert colouring_network((1, 0, 1)) in three
    with pytest.raises(StructureError):
        enumerate_networks(functions3, 2)


def test_enumeration_order_does_not_matter(functions3):
    assert enumerate_networks(functions3, 3, reverse=True) == enumerate_networks(functions3, 3)


def test_extend_network(functions3):
    N = colouring_network((0, 1, 0))
    extensions = list(extend_network(functions3, N))
    assert len(extensions) == 2
    assert all(E.restrict([0, 1, 2]) == N for E in extensions)
    forced = list(extend_network(functions3, N, {(3, 3, 3): 7}))
    assert forced == [colouring_network((0, 1, 0, 1))]


def test_networks_with_label(functions3):
    for a in range(functions3.size):
        found = list(networks_with_label(functions3, 3, (0, 1, 2), a))
        assert len(found) == 1
        assert found[0].label((0, 1, 2)) == a


def test_network_from_matrix():
    S = flexible_ra(2)
    matrices = enumerate_basic_matrices(S, 3)
    M = basic_matrices(S, 3)
    for f in matrices[:4]:
        assert validate_network(network_from_matrix(f, matrices), M).passed


# ============================================================================
# Hiperredes
# ============================================================================
def test_uniform_hypernetwork(functions3):
    H = uniform_hypernetwork(colouring_network((0, 0, 1)))
    # longitudes 1, 2 y 4 sobre 3 nodos
    assert len(H.hyperlabels) == 3 + 9 + 81
    assert validate_hypernetwork(H, functions3, 1).passed


def test_hyperlabel_checks(functions3):
    H = uniform_hypernetwork(colouring_network((0, 0, 1)))
    wrong_label = Hypernetwork(H.network, {**H.hyperlabels, (0,): 1})
    assert "hiper.etiqueta" in validate_hypernetwork(wrong_label, functions3, 1).failed_checks()

    missing = dict(H.hyperlabels)
    del missing[(2, 2)]
    assert "hiper.total" in validate_hypernetwork(Hypernetwork(H.network, missing), functions3, 1).failed_checks()

    atomic_length = Hypernetwork(H.network, {**H.hyperlabels, (0, 1, 2): 0})
    assert "hiper.longitud" in validate_hypernetwork(atomic_length, functions3, 1).failed_checks()


def test_equivalent_sequences_share_labels(functions3):
    # los nodos 0 y 1 tienen el mismo color: la diagonal los identifica
    H = uniform_hypernetwork(colouring_network((0, 0, 1)))
    split = Hypernetwork(H.network, {**H.hyperlabels, (1,): 1})
    assert validate_hypernetwork(split, functions3, 2).failed_checks() == ["hiper.equivalentes"]


def test_matrix_hypernetwork():
    f = enumerate_basic_matrices(flexible_ra(2), 3)[0]
    H = matrix_hypernetwork(f)
    assert H.network.dimension == 2
    assert len(H.hyperlabels) == 3 + 27 + 81


# ============================================================================
# Hiperbases
# ============================================================================
def test_colourings_form_a_hyperbasis(functions3):
    members = enumerate_networks(functions3, 4)
    report = check_hyperbasis(members, functions3, symmetric=True)
    assert report.passed, report.to_json()
    assert report.stats["members"] == 16


def test_hyperbasis_needs_every_atom(functions3):
    members = list(networks_with_label(functions3, 3, (0, 1, 2), 0))
    assert "hiperbase.cobertura" in check_hyperbasis(members, functions3).failed_checks()


def test_hyperbasis_members_share_size(functions3):
    with pytest.raises(StructureError):
        check_hyperbasis([colouring_network((0, 1, 0)), colouring_network((0, 1, 0, 1))], functions3)
