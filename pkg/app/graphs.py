"""
Grafos finitos para las construcciones de Monk: generadores, número cromático exacto y cintura
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from .atom_structures import StructureError
from .config import Budgets, DEFAULT_BUDGETS

log = logging.getLogger(__name__)

INFINITY = math.inf  # cintura de un bosque

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Grafo simple con nodos 0..node_count-1; las aristas se guardan sin lazos como (min, max)"""
    node_count: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        for (u, v) in self.edges:
            if u == v:
                raise StructureError(f"Lazo no permitido en el nodo {u}")
            if not (0 <= u < v < self.node_count):
                raise StructureError(f"Arista fuera de rango o no canónica: {(u, v)}")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Edge]) -> "Graph":
        return cls(node_count, frozenset((min(u, v), max(u, v)) for u, v in edges if u != v))

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "Graph":
        nodes = sorted(G.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in G.edges()))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.node_count))
        G.add_edges_from(sorted(self.edges))
        return G

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbours(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.node_count)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_independent(self, nodes: Iterable[int]) -> bool:
        items = sorted(set(nodes))
        return not any(self.adjacent(u, v) for i, u in enumerate(items) for v in items[i + 1:])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.node_count
        return Graph.from_edges(self.node_count + other.node_count,
                                list(self.edges) + [(u + shift, v + shift) for u, v in other.edges])


# ============================================================================
# Generadores
# ============================================================================
def complete(k: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(k))


def cycle(k: int) -> Graph:
    if k < 3:
        raise StructureError("Un ciclo necesita al menos 3 nodos")
    return Graph.from_networkx(nx.cycle_graph(k))


def path(k: int) -> Graph:
    """Camino con k aristas (k+1 nodos)"""
    return Graph.from_networkx(nx.path_graph(k + 1))


def disjoint_cliques(count: int, size: int) -> Graph:
    if count == 0:
        return Graph(0, frozenset())
    return Graph.from_networkx(nx.disjoint_union_all([nx.complete_graph(size) for _ in range(count)]))


def interval(size: int, N: int) -> Graph:
    """Nodos 0..size-1 con (i, j) arista si y sólo si 0 < |i - j| < N"""
    G = nx.Graph()
    G.add_nodes_from(range(size))
    G.add_edges_from((i, j) for i in range(size) for j in range(i + 1, min(size, i + N)))
    return Graph.from_networkx(G)


def erdos_sample(size: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise StructureError(f"Probabilidad fuera de [0, 1]: {p}")
    return Graph.from_networkx(nx.gnp_random_graph(size, p, seed=seed))


GENERATORS = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "disjointCliques": disjoint_cliques,
    "interval": interval,
    "erdosSample": erdos_sample,
}


def graph_gen(kind: str, *params) -> Graph:
    """graph_gen("interval", 5, 3), graph_gen("erdosSample", 10, 0.3, 7), ..."""
    if kind not in GENERATORS:
        raise StructureError(f"Tipo de grafo desconocido: {kind}")
    if any(isinstance(p, int) and p < 0 for p in params):
        raise StructureError("Los parámetros del grafo deben ser no negativos")
    G = GENERATORS[kind](*params)
    log.debug("Grafo %s%s: %d nodos, %d aristas", kind, params, G.node_count, len(G.edges))
    return G


# ============================================================================
# Número cromático
# ============================================================================
def clique_lower_bound(G: Graph) -> int:
    if G.node_count == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(G.to_networkx()))


def greedy_upper_bound(G: Graph) -> int:
    if G.node_count == 0:
        return 0
    colouring = nx.greedy_color(G.to_networkx(), strategy="largest_first")
    return max(colouring.values()) + 1


def find_k_colouring(G: Graph, k: int) -> Optional[List[int]]:
    """Coloración con k colores por ramificación y poda, o None"""
    if k <= 0:
        raise ValueError('k debe ser mayor que 0.')
    adj = G.neighbours()
    ordering = sorted(range(G.node_count), key=lambda v: (-len(adj[v]), v))
    colouring = [-1] * G.node_count

    def rec(curr: int, used: int) -> bool:
        if curr == G.node_count:
            return True
        node = ordering[curr]
        forbidden = {colouring[w] for w in adj[node]}
        for colour in range(used):
            if colour not in forbidden:
                colouring[node] = colour
                if rec(curr + 1, used):
                    return True
        # un color nuevo sólo una vez: los colores no usados son simétricos
        if used < k:
            colouring[node] = used
            if rec(curr + 1, used + 1):
                return True
        colouring[node] = -1
        return False

    return list(colouring) if rec(0, 0) else None


def chromatic_number(G: Graph, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    budgets.check("max_graph_nodes", G.node_count)
    if G.node_count == 0:
        return 0
    low, high = clique_lower_bound(G), greedy_upper_bound(G)
    for k in range(low, high):
        if find_k_colouring(G, k) is not None:
            return k
    return high


# ============================================================================
# Cintura
# ============================================================================
def girth(G: Graph):
    """Longitud del ciclo más corto, o INFINITY si G es un bosque"""
    H = G.to_networkx()
    best = INFINITY
    for u, v in sorted(G.edges):
        H.remove_edge(u, v)
        if nx.has_path(H, u, v):
            best = min(best, nx.shortest_path_length(H, u, v) + 1)
        H.add_edge(u, v)
    return best
