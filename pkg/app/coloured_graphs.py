"""
Grafos coloreados del arcoíris: paleta, triángulos prohibidos, conos y la extensión de ∃
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from .pebble_structures import PebbleStructure
from .report import CheckReport

log = logging.getLogger(__name__)

# Colores: ("g", i) con 1 ≤ i ≤ m-2, ("g0", a) con a en las tintas, ("w", i) con 0 ≤ i ≤ m-2,
# ("r", b, b2) con b, b2 en los índices rojos y ("rho",) la sombra
Colour = Tuple
Edge = Tuple[int, int]


def green(i: int) -> Colour:
    return ("g", i)


def green0(a: int) -> Colour:
    return ("g0", a)


def white(i: int) -> Colour:
    return ("w", i)


def red(b: int, b2: int) -> Colour:
    return ("r", b, b2)


SHADE = ("rho",)


def is_green(c: Colour) -> bool:
    return c[0] in ("g", "g0")


def is_red(c: Colour) -> bool:
    return c[0] == "r"


def colour_name(c: Colour) -> str:
    if c[0] == "r":
        return f"r_{c[1]}_{c[2]}"
    if c == SHADE:
        return "rho"
    return f"{c[0]}_{c[1]}"


@dataclass(frozen=True)
class ColouredGraph:
    """
    Grafo completo de dimensión m: edges[(u, v)] con u < v es el color de la arista u→v
    (el rojo r_kl en (u, v) se lee r_lk en (v, u)); yellows[base ordenada] = S.
    """
    m: int
    nodes: Tuple[int, ...]
    edges: Dict[Edge, Colour] = field(default_factory=dict)
    yellows: Dict[Tuple[int, ...], FrozenSet[int]] = field(default_factory=dict)

    def colour(self, u: int, v: int) -> Optional[Colour]:
        if u < v:
            return self.edges.get((u, v))
        c = self.edges.get((v, u))
        if c is not None and is_red(c):
            return red(c[2], c[1])
        return c

    def with_node(self, delta: int, edges: Dict[Edge, Colour],
                  yellows: Dict[Tuple[int, ...], FrozenSet[int]]) -> "ColouredGraph":
        merged = dict(self.edges)
        merged.update(edges)
        merged_y = dict(self.yellows)
        merged_y.update(yellows)
        return ColouredGraph(self.m, tuple(sorted(set(self.nodes) | {delta})), merged, merged_y)

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "nodes": list(self.nodes),
            "edges": [[u, v, colour_name(c)] for (u, v), c in sorted(self.edges.items())],
            "yellows": [[list(base), sorted(S)] for base, S in sorted(self.yellows.items())],
        }


def set_colour(edges: Dict[Edge, Colour], u: int, v: int, c: Colour):
    """Guarda u→v con clave canónica (min, max)"""
    if u < v:
        edges[(u, v)] = c
    elif is_red(c):
        edges[(v, u)] = red(c[2], c[1])
    else:
        edges[(v, u)] = c


@dataclass
class StrategyParams:
    """
    Tabla fija tinta -> índice rojo: red_map elige el rojo de cada tinta de antemano.
    No se consulta el juego EF auxiliar durante la partida; una tinta ausente deja a ∃ sin extensión.
    """
    red_map: Dict[int, int] = field(default_factory=dict)
    allow_shade: bool = False


# ============================================================================
# Conos
# ============================================================================
@dataclass(frozen=True)
class Cone:
    apex: int
    base: Tuple[int, ...]  # (x_0, ..., x_{m-2}) en el orden que inducen los verdes
    tint: int


def cone_on(colour_to_apex: Dict[int, Colour], base_set, m: int, graph: ColouredGraph) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Si las aristas base→ápice forman un cono, devuelve (base ordenada, tinte)"""
    order: List[Optional[int]] = [None] * (m - 1)
    tint = None
    for x in base_set:
        c = colour_to_apex.get(x)
        if c is None:
            return None
        if c[0] == "g0":
            if order[0] is not None:
                return None
            order[0], tint = x, c[1]
        elif c[0] == "g" and 1 <= c[1] <= m - 2:
            if order[c[1]] is not None:
                return None
            order[c[1]] = x
        else:
            return None
    if any(x is None for x in order):
        return None
    for u, v in combinations(sorted(base_set), 2):
        c = graph.colour(u, v)
        if c is not None and is_green(c):
            return None
    return tuple(order), tint


def find_cones(M: ColouredGraph) -> List[Cone]:
    """Todos los conos (ápice, base ordenada, tinte) de M"""
    cones = []
    for z in M.nodes:
        to_apex = {x: M.colour(x, z) for x in M.nodes if x != z}
        candidates = [x for x, c in to_apex.items() if c is not None and is_green(c)]
        for base in combinations(sorted(candidates), M.m - 1):
            found = cone_on(to_apex, base, M.m, M)
            if found:
                cones.append(Cone(z, found[0], found[1]))
    return cones


# ============================================================================
# Validación
# ============================================================================
def _order_preserving(i: int, k: int, j: int, l: int, greens: PebbleStructure, reds: PebbleStructure) -> bool:
    """{(i, k), (j, l)} es función parcial que preserva "<" """
    if i == j:
        return k == l
    if greens.less(i, j) and not reds.less(k, l):
        return False
    if greens.less(j, i) and not reds.less(l, k):
        return False
    return True


def _triangle_violation(cxy: Colour, cyz: Colour, cxz: Colour,
                        greens: PebbleStructure, reds: PebbleStructure) -> Optional[str]:
    """Familia prohibida del triángulo x<y<z con aristas x→y, y→z, x→z"""
    sides = (cxy, cyz, cxz)
    if all(is_green(c) for c in sides):
        return "triangulo.verde"
    for a, b, w in ((cxy, cyz, cxz), (cxy, cxz, cyz), (cyz, cxz, cxy)):
        if a[0] == "g" and a == b and w == white(a[1]):
            return "triangulo.verde_blanco"
        if a[0] == "g0" and b[0] == "g0" and w == white(0):
            return "triangulo.g0_w0"
    # (g0^i, g0^j, r_kl): el rojo se orienta de u a v y el verde llega desde el tercer nodo
    if is_red(cxz) and cxy[0] == "g0" and cyz[0] == "g0":
        if not _order_preserving(cxy[1], cxz[1], cyz[1], cxz[2], greens, reds):
            return "triangulo.g0_rojo"
    if is_red(cxy) and cxz[0] == "g0" and cyz[0] == "g0":
        if not _order_preserving(cxz[1], cxy[1], cyz[1], cxy[2], greens, reds):
            return "triangulo.g0_rojo"
    if is_red(cyz) and cxy[0] == "g0" and cxz[0] == "g0":
        if not _order_preserving(cxy[1], cyz[1], cxz[1], cyz[2], greens, reds):
            return "triangulo.g0_rojo"
    if all(is_red(c) for c in sides):
        # r_ij en x→y, r_j'k' en y→z, r_i*k* en x→z
        i, j = cxy[1], cxy[2]
        j2, k2 = cyz[1], cyz[2]
        i3, k3 = cxz[1], cxz[2]
        if not (i == i3 and j == j2 and k2 == k3):
            return "triangulo.rojos"
    return None


def _palette_ok(c: Colour, m: int, greens: PebbleStructure, reds: PebbleStructure) -> bool:
    kind = c[0]
    if kind == "g":
        return 1 <= c[1] <= m - 2
    if kind == "g0":
        return 0 <= c[1] < greens.size
    if kind == "w":
        return 0 <= c[1] <= m - 2
    if kind == "r":
        return 0 <= c[1] < reds.size and 0 <= c[2] < reds.size
    return c == SHADE


def validate_coloured_graph(M: ColouredGraph, greens: PebbleStructure, reds: PebbleStructure,
                            allow_shade: bool = False) -> CheckReport:
    """Completitud, paleta, triángulos prohibidos, amarillos y la condición de conos"""
    report = CheckReport("grafo_coloreado")
    nodes = sorted(M.nodes)
    for u, v in combinations(nodes, 2):
        c = M.colour(u, v)
        if c is None:
            report.fail("grafo.completo", {"arista": [u, v]})
        elif c == SHADE and not allow_shade:
            report.fail("grafo.sombra", {"arista": [u, v]})
        elif not _palette_ok(c, M.m, greens, reds):
            report.fail("grafo.paleta", {"arista": [u, v]}, lhs=colour_name(c))
    if not report.passed:
        return report

    for x, y, z in combinations(nodes, 3):
        check = _triangle_violation(M.colour(x, y), M.colour(y, z), M.colour(x, z), greens, reds)
        if check:
            report.fail(check, {"triangulo": [x, y, z]},
                        lhs=[colour_name(M.colour(x, y)), colour_name(M.colour(y, z)),
                             colour_name(M.colour(x, z))])

    def green_free(base) -> bool:
        return not any(is_green(M.colour(u, v)) for u, v in combinations(base, 2))

    for base, S in sorted(M.yellows.items()):
        if len(base) != M.m - 1 or list(base) != sorted(set(base)) or not set(base) <= set(nodes):
            report.fail("amarillo.forma", {"base": list(base)})
        elif not green_free(base):
            report.fail("amarillo.verde", {"base": list(base)})
        elif any(not 0 <= i < greens.size for i in S):
            report.fail("amarillo.paleta", {"base": list(base)}, lhs=sorted(S))
    for base in combinations(nodes, M.m - 1):
        if green_free(base) and base not in M.yellows:
            report.fail("amarillo.total", {"base": list(base)})

    cones = find_cones(M)
    for cone in cones:
        key = tuple(sorted(cone.base))
        if key in M.yellows and cone.tint not in M.yellows[key]:
            report.fail("cono.amarillo", {"apice": cone.apex, "base": list(cone.base), "tinte": cone.tint},
                        rhs=sorted(M.yellows[key]))
    report.stats["cones"] = len(cones)
    return report.sort()


# ============================================================================
# Extensión de ∃
# ============================================================================
def extend_coloured_graph(M: ColouredGraph, F: Tuple[int, ...], delta: int, partial: Dict[int, Colour],
                          greens: PebbleStructure, reds: PebbleStructure,
                          params: Optional[StrategyParams] = None) -> Tuple[Optional[ColouredGraph], CheckReport]:
    """
    Completa M ∪ {δ} tras la jugada de ∀ (aristas f→δ para f en F):
    rojo según la tabla red_map entre ápices de conos con la misma base y orden,
    si no el menor blanco w_i (i ≥ 1) posible, si no w_0; luego los amarillos por conjuntos de conos.
    Si no hay compleción legal devuelve (None, informe con la causa).
    """
    params = params or StrategyParams()
    report = CheckReport("extension")
    if delta in M.nodes:
        report.fail("extension.nodo", {"delta": delta}, message="δ ya es un nodo del grafo")
        return None, report
    if set(partial) != set(F) or not set(F) <= set(M.nodes):
        report.fail("extension.cara", {"F": list(F)}, message="La jugada de ∀ no cubre exactamente la cara")
        return None, report

    m = M.m
    new_edges: Dict[Edge, Colour] = {}
    for f, c in partial.items():
        set_colour(new_edges, f, delta, c)
    star = M.with_node(delta, new_edges, {})
    delta_cone = cone_on(partial, F, m, star) if len(F) == m - 1 else None

    for beta in sorted(set(M.nodes) - set(F)):
        to_beta = {f: M.colour(f, beta) for f in F}
        beta_cone = cone_on(to_beta, F, m, M) if len(F) == m - 1 else None
        if beta_cone and delta_cone and beta_cone[0] == delta_cone[0]:
            a, b = beta_cone[1], delta_cone[1]
            if a not in params.red_map or b not in params.red_map:
                report.fail("extension.sin_indice", {"beta": beta, "tintes": [a, b]},
                            message="No hay índice rojo para alguna de las tintas")
                return None, report
            set_colour(new_edges, beta, delta, red(params.red_map[a], params.red_map[b]))
            report.count("rojos")
            continue
        chosen = None
        for i in range(1, m - 1):
            if not any(star.colour(beta, f) == green(i) and star.colour(f, delta) == green(i) for f in F):
                chosen = white(i)
                break
        if chosen is None and not any(star.colour(beta, f)[0] == "g0" and star.colour(delta, f)[0] == "g0"
                                      for f in F):
            chosen = white(0)
        if chosen is None:
            report.fail("extension.sin_color", {"beta": beta}, message="Ningún color legal para β→δ")
            return None, report
        set_colour(new_edges, beta, delta, chosen)
        report.count("blancos")

    plus = M.with_node(delta, new_edges, {})
    cones = find_cones(plus)
    yellows: Dict[Tuple[int, ...], FrozenSet[int]] = {}
    for base in combinations(sorted(plus.nodes), m - 1):
        if delta not in base or base in plus.yellows:
            continue
        if any(is_green(plus.colour(u, v)) for u, v in combinations(base, 2)):
            continue
        yellows[base] = frozenset(c.tint for c in cones if tuple(sorted(c.base)) == base)
    result = M.with_node(delta, new_edges, yellows)

    check = validate_coloured_graph(result, greens, reds, params.allow_shade)
    if not check.passed:
        report.counterexamples.extend(check.counterexamples)
        report.notes.append("La compleción propuesta no es un grafo válido")
        return None, report
    log.debug("extend_coloured_graph: δ=%d con %s", delta, report.stats)
    return result, report
