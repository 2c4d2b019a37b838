"""
Persistencia JSON y texto: estructuras de átomos, redes, grafos coloreados, grafos y estructuras de guijarros
El orden de los átomos del archivo fija los índices, de modo que los informes son reproducibles
"""
import json
import logging
import os
from typing import Any, Dict, List, Tuple, Union

from .atom_structures import CaAtomStructure, Flavor, RaAtomStructure, StructureError, bits, to_mask
from .coloured_graphs import SHADE, ColouredGraph, green, green0, red, white
from .graphs import Graph
from .networks import Network
from .pebble_structures import PebbleStructure

log = logging.getLogger(__name__)


class SerializationError(Exception):
    """JSON o texto mal formado"""

    def __init__(self, message: str, source: str = ""):
        self.source = source
        where = f" ({source})" if source else ""
        super().__init__(f"Error de formato{where}: {message}")


AtomStructure = Union[RaAtomStructure, CaAtomStructure]


def _require(data: Dict[str, Any], *keys: str):
    missing = [k for k in keys if k not in data]
    if missing:
        raise SerializationError(f"faltan los campos {missing}")


# ============================================================================
# Estructuras de átomos
# ============================================================================
def ra_to_dict(S: RaAtomStructure) -> Dict[str, Any]:
    data: Dict[str, Any] = {"type": "ra"}
    if S.provenance:
        data["provenance"] = S.provenance
    data.update({
        "atoms": list(S.atoms),
        "identity": sorted(S.identity),
        "converse": list(S.converse),
        "consistent": [list(t) for t in sorted(S.consistent)],
    })
    return data


def ca_to_dict(S: CaAtomStructure) -> Dict[str, Any]:
    n = S.dimension
    data: Dict[str, Any] = {"type": "ca", "dimension": n, "flavor": S.flavor.name}
    if S.provenance:
        data["provenance"] = S.provenance
    data.update({
        "atoms": list(S.atoms),
        "diag": {f"{i},{j}": list(bits(S.diagonal(i, j))) for i in range(n) for j in range(i + 1, n)},
        "cyl": [[list(bits(row)) for row in S.cyl[i]] for i in range(n)],
    })
    if S.has_subst():
        data["subst"] = {f"{i},{j}": list(image) for (i, j), image in sorted(S.subst.items())}
    return data


def structure_to_dict(S: AtomStructure) -> Dict[str, Any]:
    return ra_to_dict(S) if isinstance(S, RaAtomStructure) else ca_to_dict(S)


def _pair(key: str) -> Tuple[int, int]:
    try:
        i, j = (int(part) for part in key.split(","))
    except ValueError:
        raise SerializationError(f"clave de par inválida: {key!r}") from None
    return i, j


def structure_from_dict(data: Dict[str, Any]) -> AtomStructure:
    """Reconoce RA o CA por "type" o, en su defecto, por la presencia de "consistent"/"cyl" """
    if not isinstance(data, dict):
        raise SerializationError("se esperaba un objeto JSON")
    kind = data.get("type") or ("ra" if "consistent" in data else "ca")
    provenance = dict(data.get("provenance", {}))
    try:
        if kind == "ra":
            _require(data, "atoms", "identity", "converse", "consistent")
            return RaAtomStructure(tuple(data["atoms"]), frozenset(data["identity"]), tuple(data["converse"]),
                                   frozenset(tuple(t) for t in data["consistent"]), provenance)
        if kind == "ca":
            _require(data, "atoms", "diag", "cyl")
            atoms = tuple(data["atoms"])
            dimension = data.get("dimension", len(data["cyl"]))
            diag = {_pair(key): to_mask(value) for key, value in data["diag"].items()}
            cyl = tuple(tuple(to_mask(row) for row in rows) for rows in data["cyl"])
            subst = None
            if "subst" in data:
                subst = {_pair(key): tuple(image) for key, image in data["subst"].items()}
            flavor = Flavor[data.get("flavor", "CA")]
            return CaAtomStructure(dimension, atoms, diag, cyl, flavor, subst, provenance)
    except (TypeError, KeyError, ValueError) as e:
        raise SerializationError(str(e)) from None
    except StructureError as e:
        raise SerializationError(str(e)) from None
    raise SerializationError(f"tipo de estructura desconocido: {kind!r}")


# ============================================================================
# Redes y grafos coloreados
# ============================================================================
def _tuple_key(key: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in key.strip("()[] ").split(",") if part.strip())
    except ValueError:
        raise SerializationError(f"tupla inválida: {key!r}") from None


def network_from_dict(data: Dict[str, Any]) -> Network:
    _require(data, "nodes", "dimension", "labels")
    nodes, dimension = data["nodes"], data["dimension"]
    table = {_tuple_key(key): value for key, value in data["labels"].items()}
    probe = Network(dimension, nodes, tuple([0] * nodes ** dimension))
    try:
        labels = tuple(table[t] for t in probe.tuples())
    except KeyError as e:
        raise SerializationError(f"falta la etiqueta de la tupla {e.args[0]}") from None
    return Network(dimension, nodes, labels)


def parse_colour(name: str):
    if name == "rho":
        return SHADE
    head, _, rest = name.partition("_")
    try:
        if head == "r":
            b, b2 = rest.split("_")
            return red(int(b), int(b2))
        builder = {"g": green, "g0": green0, "w": white}[head]
        return builder(int(rest))
    except (KeyError, ValueError):
        raise SerializationError(f"color desconocido: {name!r}") from None


def coloured_graph_from_dict(data: Dict[str, Any]) -> ColouredGraph:
    _require(data, "m", "nodes", "edges")
    edges = {}
    for u, v, name in data["edges"]:
        edges[(min(u, v), max(u, v))] = parse_colour(name)
    yellows = {tuple(base): frozenset(S) for base, S in data.get("yellows", [])}
    return ColouredGraph(data["m"], tuple(data["nodes"]), edges, yellows)


# ============================================================================
# Grafos y estructuras de guijarros
# ============================================================================
def graph_to_dict(G: Graph) -> Dict[str, Any]:
    return {"nodes": G.node_count, "edges": [list(e) for e in sorted(G.edges)]}


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    _require(data, "nodes", "edges")
    try:
        return Graph.from_edges(data["nodes"], (tuple(e) for e in data["edges"]))
    except (StructureError, TypeError, ValueError) as e:
        raise SerializationError(str(e)) from None


def graph_to_text(G: Graph) -> str:
    """Primera línea: número de nodos; luego una arista "i j" por línea"""
    lines = [str(G.node_count)] + [f"{u} {v}" for u, v in sorted(G.edges)]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    rows = [line.split("#")[0].strip() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise SerializationError("lista de aristas vacía")
    edges: List[Tuple[int, int]] = []
    try:
        k = int(rows[0])
        for number, row in enumerate(rows[1:], start=2):
            parts = row.split()
            if len(parts) != 2:
                raise SerializationError(f"se esperaban dos nodos en la línea {number}: {row!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return Graph.from_edges(k, edges)
    except ValueError as e:
        raise SerializationError(str(e)) from None
    except StructureError as e:
        raise SerializationError(str(e)) from None


def pebble_to_dict(A: PebbleStructure) -> Dict[str, Any]:
    return {"size": A.size, "relations": {name: sorted(list(t) for t in tuples)
                                          for name, tuples in sorted(A.relations.items())},
            "description": A.description}


def pebble_from_dict(data: Dict[str, Any]) -> PebbleStructure:
    _require(data, "size", "relations")
    relations = {name: frozenset(tuple(t) for t in tuples) for name, tuples in data["relations"].items()}
    if "<" not in relations:
        raise SerializationError("una estructura de guijarros necesita la relación '<'")
    try:
        return PebbleStructure(data["size"], relations, dict(data.get("description", {})))
    except StructureError as e:
        raise SerializationError(str(e)) from None


# ============================================================================
# Archivos
# ============================================================================
def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SerializationError(f"JSON inválido en la línea {e.lineno}, columna {e.colno}", path) from None
    except OSError as e:
        raise SerializationError(str(e), path) from None


def write_json(data: Any, path: str) -> str:
    out_dir = os.path.dirname(path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False, default=str)
        f.write("\n")
    log.debug("JSON escrito en %s", path)
    return path


def load_structure(path: str) -> AtomStructure:
    return structure_from_dict(read_json(path))


def load_graph(path: str) -> Graph:
    """.json o lista de aristas en texto"""
    if path.endswith(".json"):
        return graph_from_dict(read_json(path))
    try:
        with open(path, "r", encoding="utf-8") as f:
            return graph_from_text(f.read())
    except OSError as e:
        raise SerializationError(str(e), path) from None
