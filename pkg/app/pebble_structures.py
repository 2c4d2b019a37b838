"""
Estructuras relacionales finitas para los juegos de guijarros:
órdenes lineales, grafos completos y las uniones disjuntas M[p, I]
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from .atom_structures import StructureError

PebbleRelation = FrozenSet[Tuple[int, ...]]


@dataclass(frozen=True)
class PebbleStructure:
    """Universo {0..size-1} con relaciones nombradas; siempre hay una binaria "<" """
    size: int
    relations: Dict[str, PebbleRelation]
    description: Dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise StructureError("El universo no puede tener tamaño negativo")
        for name, tuples in self.relations.items():
            for t in tuples:
                if any(not 0 <= x < self.size for x in t):
                    raise StructureError(f"La relación {name!r} sale del universo: {t}")

    @property
    def universe(self) -> range:
        return range(self.size)

    def holds(self, name: str, *args: int) -> bool:
        return tuple(args) in self.relations[name]

    def less(self, x: int, y: int) -> bool:
        return (x, y) in self.relations["<"]

    def arities(self) -> Dict[str, int]:
        return {name: (len(next(iter(t))) if t else 2) for name, t in self.relations.items()}


def _structure(size: int, less, kind: str, **params) -> PebbleStructure:
    return PebbleStructure(size, {"<": frozenset(less)}, {"kind": kind, "params": params})


def linear(length: int) -> PebbleStructure:
    if length < 0:
        raise StructureError("La longitud debe ser no negativa")
    return _structure(length, ((i, j) for i in range(length) for j in range(i + 1, length)),
                      "linear", length=length)


def reversed_linear(length: int) -> PebbleStructure:
    """El orden inverso: i < j si y sólo si i > j como enteros"""
    if length < 0:
        raise StructureError("La longitud debe ser no negativa")
    return _structure(length, ((i, j) for i in range(length) for j in range(i)),
                      "reversedLinear", length=length)


def complete_graph(p: int) -> PebbleStructure:
    """K_p con "<" como relación de arista (simétrica e irreflexiva)"""
    if p < 0:
        raise StructureError("El tamaño debe ser no negativo")
    return _structure(p, ((i, j) for i in range(p) for j in range(p) if i != j),
                      "completeGraph", p=p)


def m_p_i(p: int, length: int) -> PebbleStructure:
    """
    M[p, I] con I el orden lineal de longitud length (nodos 0..length-1) y K_p (nodos length..):
    "<" es <^I ∪ aristas de K_p ∪ I×K_p ∪ K_p×I.
    """
    if p < 0 or length < 0:
        raise StructureError("Los tamaños deben ser no negativos")
    order = [(i, j) for i in range(length) for j in range(i + 1, length)]
    clique = range(length, length + p)
    edges = [(a, b) for a in clique for b in clique if a != b]
    across = [(i, k) for i in range(length) for k in clique] + [(k, i) for i in range(length) for k in clique]
    return _structure(length + p, order + edges + across, "mPI", p=p, length=length)


PEBBLE_KINDS = {
    "linear": linear,
    "completeGraph": complete_graph,
    "mPI": m_p_i,
    "reversedLinear": reversed_linear,
}


def pebble_structure(kind: str, *params: int) -> PebbleStructure:
    try:
        builder = PEBBLE_KINDS[kind]
    except KeyError:
        raise StructureError(f"Tipo de estructura desconocido: {kind!r}") from None
    return builder(*params)
