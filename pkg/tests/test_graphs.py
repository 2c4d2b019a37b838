import networkx as nx
import pytest

from app.atom_structures import StructureError
from app.config import Budgets, BudgetExceeded
from app.graphs import (INFINITY, Graph, chromatic_number, complete, cycle, disjoint_cliques,
                        erdos_sample, find_k_colouring, girth, graph_gen, interval, path)


def test_graph_rejects_loops():
    with pytest.raises(StructureError):
        Graph(2, frozenset({(1, 1)}))
    assert Graph.from_edges(3, [(2, 0), (1, 1)]).edges == frozenset({(0, 2)})


@pytest.mark.parametrize("G, chi, g", [
    (complete(4), 4, 3),
    (cycle(5), 3, 5),
    (cycle(4), 2, 4),
    (path(3), 2, INFINITY),
    (disjoint_cliques(3, 3), 3, 3),
    (interval(5, 3), 3, 3),
    (Graph.from_networkx(nx.petersen_graph()), 3, 5),
])
def test_chromatic_number_and_girth(G, chi, g):
    assert chromatic_number(G) == chi
    assert girth(G) == g


def test_generator_sizes():
    assert path(3).node_count == 4
    G = disjoint_cliques(3, 3)
    assert (G.node_count, len(G.edges)) == (9, 9)
    assert disjoint_cliques(0, 3).node_count == 0
    assert len(interval(5, 3).edges) == 7
    assert chromatic_number(Graph(0, frozenset())) == 0


def test_short_cycle_is_rejected():
    with pytest.raises(StructureError):
        cycle(2)


def test_graph_gen_dispatch():
    assert graph_gen("cycle", 5) == cycle(5)
    assert graph_gen("erdosSample", 8, 0.5, 3) == erdos_sample(8, 0.5, 3)
    with pytest.raises(StructureError):
        graph_gen("petersen")
    with pytest.raises(StructureError):
        graph_gen("complete", -1)


def test_k_colouring():
    assert find_k_colouring(cycle(5), 2) is None
    colouring = find_k_colouring(cycle(5), 3)
    assert all(colouring[u] != colouring[v] for u, v in cycle(5).edges)
    with pytest.raises(ValueError):
        find_k_colouring(cycle(5), 0)


def test_chromatic_number_budget():
    with pytest.raises(BudgetExceeded) as info:
        chromatic_number(complete(4), Budgets(max_graph_nodes=3))
    assert info.value.budget == "max_graph_nodes"
    assert info.value.requested == 4
