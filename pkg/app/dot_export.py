"""
Exportación DOT con Graphviz: grafos de Monk, grafos coloreados del arcoíris y redes de juegos
"""
import logging
import os
from typing import Optional, Tuple

import graphviz

from .coloured_graphs import ColouredGraph, colour_name
from .graphs import Graph
from .networks import Network

log = logging.getLogger(__name__)

# Paleta por familia de color
EDGE_COLOURS = {
    "g": "forestgreen",
    "g0": "darkgreen",
    "w": "gray60",
    "r": "firebrick",
    "rho": "black",
}


def graph_to_dot(G: Graph, title: str = "Grafo", colouring: Optional[list] = None) -> graphviz.Graph:
    """Grafo no dirigido; con colouring, cada nodo lleva su clase de color en la etiqueta"""
    dot = graphviz.Graph(comment=title)
    dot.attr(label=title)
    dot.attr(labelloc='t')
    for v in range(G.node_count):
        label = f"{v}" if colouring is None else f"{v}\nc{colouring[v]}"
        dot.node(str(v), label, shape='circle')
    for u, v in sorted(G.edges):
        dot.edge(str(u), str(v))
    return dot


def coloured_graph_to_dot(M: ColouredGraph, title: str = "Grafo coloreado") -> graphviz.Digraph:
    """Cada arista u→v (u < v) con su color; los amarillos se listan en la etiqueta del gráfico"""
    dot = graphviz.Digraph(comment=title)
    dot.attr(rankdir='LR')
    yellows = "; ".join(f"y{sorted(S)}{list(base)}" for base, S in sorted(M.yellows.items()))
    dot.attr(label=f"{title}\n{yellows}" if yellows else title)
    dot.attr(labelloc='t')
    for v in M.nodes:
        dot.node(str(v), str(v), shape='circle')
    for (u, v), c in sorted(M.edges.items()):
        dot.edge(str(u), str(v), label=colour_name(c), color=EDGE_COLOURS.get(c[0], "black"))
    return dot


def network_to_dot(N: Network, atoms, title: str = "Red") -> graphviz.Digraph:
    """Sólo para dimensión 2: la arista x→y lleva el átomo N(x, y)"""
    dot = graphviz.Digraph(comment=title)
    dot.attr(label=title)
    dot.attr(labelloc='t')
    for v in range(N.nodes):
        dot.node(str(v), f"{v}\n{atoms[N.label((v, v))]}", shape='circle')
    for x in range(N.nodes):
        for y in range(N.nodes):
            if x != y:
                dot.edge(str(x), str(y), label=atoms[N.label((x, y))])
    return dot


def render(dot, out_path: str, fmt: str = "png") -> Tuple[bool, str]:
    """Guarda el .dot y, si el ejecutable de Graphviz está disponible, el archivo renderizado"""
    try:
        out_dir = os.path.dirname(out_path)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
        base, ext = os.path.splitext(out_path)
        if ext == ".dot":
            dot.save(out_path)
            return True, out_path
        rendered = dot.render(base, format=fmt, cleanup=True)
        return True, rendered
    except graphviz.ExecutableNotFound:
        base = os.path.splitext(out_path)[0]
        dot.save(base + ".dot")
        log.warning("Graphviz no está instalado; se guardó sólo %s.dot", base)
        return True, base + ".dot"
    except Exception as e:
        return False, f"Error generando el gráfico: {str(e)}"
