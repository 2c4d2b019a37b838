"""
Estructuras de átomos finitas: de álgebras de relaciones (RA) y cilíndricas/poliádicas (CA)
Los conjuntos de átomos se representan como bitsets (enteros) sobre índices 0..k-1
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

Triple = Tuple[int, int, int]


class StructureError(Exception):
    """Estructura de átomos mal formada o parámetros de construcción inválidos"""
    pass


# ============================================================================
# Bitsets
# ============================================================================
def bits(mask: int) -> Iterator[int]:
    """Índices de los bits encendidos, en orden creciente"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(k: int) -> int:
    return (1 << k) - 1


class Flavor(Enum):
    """Sabores de estructura cilíndrica"""
    DF = "Df"
    CA = "Ca"
    PTA = "Pta"
    TA = "Ta"
    PEA = "Pea"


# ============================================================================
# Estructuras RA
# ============================================================================
def peircean_orbit(t: Triple, converse: Tuple[int, ...]) -> FrozenSet[Triple]:
    """Las seis lecturas de un triángulo (a ≤ b;c) bajo las transformaciones de Peirce"""
    seen = {t}
    frontier = [t]
    while frontier:
        a, b, c = frontier.pop()
        for nxt in ((b, a, converse[c]),
                    (converse[a], converse[c], converse[b]),
                    (c, converse[b], a)):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


@dataclass(frozen=True)
class RaAtomStructure:
    """
    Estructura de átomos de un álgebra de relaciones.
    consistent contiene los triples (a, b, c) con a ≤ b;c a nivel de átomos.
    """
    atoms: Tuple[str, ...]
    identity: FrozenSet[int]
    converse: Tuple[int, ...]
    consistent: FrozenSet[Triple]
    provenance: Dict[str, object] = field(default_factory=dict, compare=False)
    _comp: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.atoms)
        if k == 0:
            raise StructureError("La estructura no tiene átomos")
        if len(self.converse) != k or any(not 0 <= c < k for c in self.converse):
            raise StructureError("El converso debe ser una función sobre los átomos")
        if not self.identity or any(not 0 <= e < k for e in self.identity):
            raise StructureError("Las identidades deben ser átomos existentes y no vacías")
        comp = [[0] * k for _ in range(k)]
        for (a, b, c) in self.consistent:
            if not (0 <= a < k and 0 <= b < k and 0 <= c < k):
                raise StructureError(f"Triple fuera de rango: {(a, b, c)}")
            comp[b][c] |= 1 << a
        object.__setattr__(self, "_comp", tuple(tuple(row) for row in comp))

    # ------------------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return full_mask(self.size)

    @property
    def identity_mask(self) -> int:
        return to_mask(self.identity)

    def index_of(self, label: str) -> int:
        try:
            return self.atoms.index(label)
        except ValueError:
            raise StructureError(f"Átomo desconocido: {label!r}") from None

    def compose_atoms(self, b: int, c: int) -> int:
        return self._comp[b][c]

    def compose(self, x: int, y: int) -> int:
        """Composición de Cm(S) sobre bitsets"""
        result = 0
        ys = list(bits(y))
        for b in bits(x):
            row = self._comp[b]
            for c in ys:
                result |= row[c]
        return result

    def converse_set(self, x: int) -> int:
        return to_mask(self.converse[a] for a in bits(x))

    def is_consistent(self, a: int, b: int, c: int) -> bool:
        return bool(self._comp[b][c] >> a & 1)

    def triangle_ok(self, xy: int, yz: int, xz: int) -> bool:
        """Un triángulo etiquetado x->y, y->z, x->z no es prohibido"""
        return self.is_consistent(xz, xy, yz)

    def non_identity(self) -> List[int]:
        return [a for a in range(self.size) if a not in self.identity]

    # ------------------------------------------------------------------
    @classmethod
    def from_predicate(cls, atoms: Iterable[str], identity: Iterable[int], converse: Iterable[int],
                       is_consistent: Callable[[int, int, int], bool],
                       provenance: Optional[Dict[str, object]] = None) -> "RaAtomStructure":
        labels = tuple(atoms)
        k = len(labels)
        consistent = frozenset(t for t in product(range(k), repeat=3) if is_consistent(*t))
        return cls(labels, frozenset(identity), tuple(converse), consistent, dict(provenance or {}))

    @classmethod
    def from_forbidden(cls, atoms: Iterable[str], identity: Iterable[int], converse: Iterable[int],
                       is_forbidden: Callable[[int, int, int], bool],
                       provenance: Optional[Dict[str, object]] = None) -> "RaAtomStructure":
        """Consistentes = complemento de la clausura de Peirce de los prohibidos"""
        labels = tuple(atoms)
        conv = tuple(converse)
        k = len(labels)
        if len(conv) != k:
            raise StructureError("El converso debe ser una función sobre los átomos")
        forbidden = set()
        for t in product(range(k), repeat=3):
            if t not in forbidden and is_forbidden(*t):
                forbidden |= peircean_orbit(t, conv)
        consistent = frozenset(t for t in product(range(k), repeat=3) if t not in forbidden)
        return cls(labels, frozenset(identity), conv, consistent, dict(provenance or {}))


# ============================================================================
# Estructuras CA
# ============================================================================
@dataclass(frozen=True)
class CaAtomStructure:
    """
    Estructura de átomos n-dimensional.
    diag[(i, j)] es el bitset D_ij; cyl[i][a] es el bitset de átomos ≡_i-relacionados con a;
    subst[(i, j)][a] (i < j) es la imagen de a por ≡_ij, si hay sustituciones.
    """
    dimension: int
    atoms: Tuple[str, ...]
    diag: Dict[Tuple[int, int], int]
    cyl: Tuple[Tuple[int, ...], ...]
    flavor: Flavor = Flavor.CA
    subst: Optional[Dict[Tuple[int, int], Tuple[int, ...]]] = None
    provenance: Dict[str, object] = field(default_factory=dict, compare=False)
    _equivalence: Tuple[bool, ...] = field(init=False, repr=False, compare=False)
    _subst_inverse: Dict[Tuple[int, int], Tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n, k = self.dimension, len(self.atoms)
        if n < 1:
            raise StructureError("La dimensión debe ser positiva")
        if k == 0:
            raise StructureError("La estructura no tiene átomos")
        if len(self.cyl) != n or any(len(row) != k for row in self.cyl):
            raise StructureError("cyl debe tener una relación por dimensión y una fila por átomo")
        full = full_mask(k)
        diag = {}
        for i in range(n):
            for j in range(n):
                value = self.diag.get((i, j), self.diag.get((j, i)))
                if value is None:
                    if i != j:
                        raise StructureError(f"Falta la diagonal d_{i}{j}")
                    value = full
                diag[(i, j)] = value & full
        object.__setattr__(self, "diag", diag)

        inverse = {}
        if self.subst is not None:
            normalized = {}
            for (i, j), image in self.subst.items():
                key = (min(i, j), max(i, j))
                if len(image) != k or any(not 0 <= b < k for b in image):
                    raise StructureError(f"La sustitución [{i},{j}] debe ser una función sobre los átomos")
                if sorted(image) != list(range(k)):
                    raise StructureError(f"La sustitución [{i},{j}] debe ser una biyección")
                if any(image[b] != a for a, b in enumerate(image)):
                    raise StructureError(f"La sustitución [{i},{j}] debe ser una involución")
                normalized[key] = tuple(image)
            object.__setattr__(self, "subst", normalized)
            # una involución es su propia inversa
            inverse = dict(normalized)
        object.__setattr__(self, "_subst_inverse", inverse)
        object.__setattr__(self, "_equivalence", tuple(_is_equivalence(row) for row in self.cyl))

    # ------------------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def full(self) -> int:
        return full_mask(self.size)

    def index_of(self, label: str) -> int:
        try:
            return self.atoms.index(label)
        except ValueError:
            raise StructureError(f"Átomo desconocido: {label!r}") from None

    def has_subst(self) -> bool:
        return self.subst is not None

    def cyl_is_equivalence(self, i: int) -> bool:
        return self._equivalence[i]

    def related(self, i: int, a: int, b: int) -> bool:
        return bool(self.cyl[i][a] >> b & 1)

    def cylindrify(self, i: int, x: int) -> int:
        """c_i X = {c : ∃a∈X, a ≡_i c}"""
        row = self.cyl[i]
        result = 0
        if self._equivalence[i]:
            # clases disjuntas: basta un representante por clase
            while x:
                low = x & -x
                cls = row[low.bit_length() - 1]
                result |= cls
                x &= ~cls
            return result
        for a in bits(x):
            result |= row[a]
        return result

    def diagonal(self, i: int, j: int) -> int:
        return self.diag[(i, j)]

    def subst_atom(self, i: int, j: int, a: int) -> int:
        if i == j:
            return a
        return self.subst[(min(i, j), max(i, j))][a]

    def transpose(self, i: int, j: int, x: int) -> int:
        """s_[ij] X = {a : a∘[i,j] ∈ X}"""
        if i == j:
            return x
        if self.subst is None:
            raise StructureError("La estructura no tiene sustituciones")
        inverse = self._subst_inverse[(min(i, j), max(i, j))]
        return to_mask(inverse[b] for b in bits(x))

    def replace(self, i: int, j: int, x: int) -> int:
        """s^i_j x = c_i(d_ij · x); s^i_i x = x"""
        if i == j:
            return x
        return self.cylindrify(i, self.diag[(i, j)] & x)

    def t_op(self, i: int, j: int, x: int) -> int:
        """t^i_j x = d_ij · c_i x; t^i_i x = x"""
        if i == j:
            return x
        return self.diag[(i, j)] & self.cylindrify(i, x)


def _is_equivalence(row: Tuple[int, ...]) -> bool:
    for a, mask in enumerate(row):
        if not mask >> a & 1:
            return False
        for b in bits(mask):
            if row[b] != mask:
                return False
    return True


def cyl_from_keys(keys: List[List[object]]) -> Tuple[Tuple[int, ...], ...]:
    """
    Construye relaciones de equivalencia a partir de una clave por (dimensión, átomo):
    a ≡_i b si y sólo si keys[i][a] == keys[i][b]. Cada clase comparte un mismo entero.
    """
    rows = []
    for per_atom in keys:
        classes: Dict[object, int] = {}
        for a, key in enumerate(per_atom):
            classes[key] = classes.get(key, 0) | (1 << a)
        rows.append(tuple(classes[key] for key in per_atom))
    return tuple(rows)


def ra_as_ca2(S: RaAtomStructure) -> CaAtomStructure:
    """
    Estructura bidimensional asociada a una estructura RA:
    d_01 = identidades, ≡_0 agrupa por identidad de rango, ≡_1 por identidad de dominio,
    y la sustitución [0,1] es el converso.
    """
    def right_identity(a):
        return min((e for e in S.identity if S.is_consistent(a, a, e)), default=-1)

    def left_identity(a):
        return min((e for e in S.identity if S.is_consistent(a, e, a)), default=-1)

    keys = [[right_identity(a) for a in range(S.size)],
            [left_identity(a) for a in range(S.size)]]
    return CaAtomStructure(
        dimension=2,
        atoms=S.atoms,
        diag={(0, 1): S.identity_mask},
        cyl=cyl_from_keys(keys),
        flavor=Flavor.PEA,
        subst={(0, 1): S.converse},
        provenance={"kind": "ra_as_ca2", "source": dict(S.provenance)},
    )
