"""
Construcciones concretas de estructuras de átomos:
Monk, η(Γ), Bin(n, r), matrices básicas, arcoíris monocromático y estructuras flexibles
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Tuple

from .atom_structures import (CaAtomStructure, Flavor, RaAtomStructure, StructureError,
                              cyl_from_keys, to_mask)
from .config import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .graphs import Graph

log = logging.getLogger(__name__)

IDENTITY_LABEL = "1'"


# ============================================================================
# Monk
# ============================================================================
def monk_ra(G: Graph, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> RaAtomStructure:
    """
    Átomos {1'} ∪ (G × n), todos autoconversos. Un triple sin identidad es consistente
    si sus colores no son todos iguales, o si lo son y sus primeras coordenadas
    contienen una arista de G.
    """
    if G.node_count == 0:
        raise StructureError("El grafo de Monk no puede ser vacío")
    if n < 2:
        raise StructureError("Se necesitan al menos 2 colores")
    budgets.check("max_atoms", 1 + G.node_count * n)
    pairs = [(x, i) for x in range(G.node_count) for i in range(n)]
    labels = [IDENTITY_LABEL] + [f"({x},{i})" for x, i in pairs]

    def consistent(a, b, c):
        triple = (a, b, c)
        if 0 in triple:
            rest = [t for t in triple if t != 0]
            # una identidad y los otros dos iguales, o tres identidades
            return len(rest) == 0 or (len(rest) == 2 and rest[0] == rest[1])
        xs = [pairs[t - 1][0] for t in triple]
        colours = {pairs[t - 1][1] for t in triple}
        if len(colours) > 1:
            return True
        return not G.is_independent(xs)

    S = RaAtomStructure.from_predicate(labels, [0], range(len(labels)), consistent,
                                       {"kind": "monk", "params": {"nodes": G.node_count,
                                                                   "edges": sorted(G.edges),
                                                                   "colours": n}})
    log.info("monk_ra: %d átomos", S.size)
    return S


# ============================================================================
# η(Γ)
# ============================================================================
def _partitions(n: int) -> List[Tuple[int, ...]]:
    """Particiones de n como representantes mínimos por elemento, en orden determinista"""
    result = []

    def rec(prefix: List[int]):
        if len(prefix) == n:
            result.append(tuple(prefix))
            return
        i = len(prefix)
        for rep in sorted(set(prefix)):
            rec(prefix + [rep])
        rec(prefix + [i])

    rec([])
    return result


def _normalize(rep: List[int]) -> Tuple[int, ...]:
    first: Dict[int, int] = {}
    return tuple(first.setdefault(r, i) for i, r in enumerate(rep))


EtaAtom = Tuple[Tuple[Optional[Tuple[int, int]], ...], Tuple[int, ...]]


def eta_atoms(G: Graph, n: int) -> List[EtaAtom]:
    """Pares (K, ∼) según el número de clases de ∼"""
    values = [(x, c) for x in range(G.node_count) for c in range(n)]

    def independent(points):
        return G.is_independent({x for x, _ in points}) if len({x for x, _ in points}) > 1 else True

    atoms: List[EtaAtom] = []
    for rep in _partitions(n):
        classes = len(set(rep))
        if classes == n:
            for K in product(values, repeat=n):
                if not independent(set(K)):
                    atoms.append((tuple(K), rep))
        elif classes == n - 1:
            pair = [i for i in range(n) if rep.count(rep[i]) == 2]
            for value in values:
                K = tuple(value if i in pair else None for i in range(n))
                atoms.append((K, rep))
        else:
            atoms.append((tuple([None] * n), rep))
    return atoms


def _eta_label(atom: EtaAtom) -> str:
    K, rep = atom
    entries = ",".join("-" if v is None else f"{v[0]}.{v[1]}" for v in K)
    blocks: Dict[int, List[str]] = {}
    for i, r in enumerate(rep):
        blocks.setdefault(r, []).append(str(i))
    return f"K={entries} ~{'|'.join(''.join(b) for b in blocks.values())}"


def eta_pea(G: Graph, n: int = 3, budgets: Budgets = DEFAULT_BUDGETS) -> CaAtomStructure:
    """
    η(Γ): D_ij = {i ∼ j}; (K,∼) ≡_i (K',∼') si K(i) = K'(i) y ∼, ∼' coinciden fuera de i;
    ≡_ij es (K,∼) ↦ (K∘[i,j], ∼∘[i,j]).
    El conjunto Γ×n es independiente si sus primeras coordenadas lo son en Γ.
    """
    if n < 3:
        raise StructureError("η(Γ) requiere dimensión n ≥ 3")
    if G.node_count == 0:
        raise StructureError("η(Γ) requiere un grafo no vacío")
    budgets.check("max_atoms", len(_partitions(n)) * (G.node_count * n) ** n)
    atoms = eta_atoms(G, n)
    index = {a: k for k, a in enumerate(atoms)}

    def off(rep, i):
        return tuple(rep[x] == rep[y] for x in range(n) for y in range(x + 1, n) if i not in (x, y))

    keys = [[(K[i], off(rep, i)) for (K, rep) in atoms] for i in range(n)]
    diag = {(i, j): to_mask(k for k, (_, rep) in enumerate(atoms) if rep[i] == rep[j])
            for i in range(n) for j in range(n)}
    subst = {}
    for i in range(n):
        for j in range(i + 1, n):
            swap = list(range(n))
            swap[i], swap[j] = j, i
            image = []
            for (K, rep) in atoms:
                K2 = tuple(K[swap[x]] for x in range(n))
                rep2 = _normalize([rep[swap[x]] for x in range(n)])
                image.append(index[(K2, rep2)])
            subst[(i, j)] = tuple(image)

    S = CaAtomStructure(
        dimension=n,
        atoms=tuple(_eta_label(a) for a in atoms),
        diag=diag,
        cyl=cyl_from_keys(keys),
        flavor=Flavor.PEA,
        subst=subst,
        provenance={"kind": "eta", "params": {"nodes": G.node_count, "edges": sorted(G.edges),
                                              "dimension": n}},
    )
    log.info("eta_pea: %d átomos en dimensión %d", S.size, n)
    return S


# ============================================================================
# κ, ψ y Bin(n, r)
# ============================================================================
def kappa(x: int, y: int) -> int:
    """κ(x, 0) = 0, κ(x, y+1) = 1 + x·κ(x, y); enteros de precisión arbitraria"""
    if x < 0 or y < 0:
        raise StructureError("κ está definida sobre naturales")
    value = 0
    for _ in range(y):
        value = 1 + x * value
    return value


def compute_psi(n: int, r: int) -> int:
    """ψ(n, r) = κ((n-1)r, (n-1)r) + 1"""
    if n < 2 or r < 0:
        raise StructureError("ψ requiere n ≥ 2 y r ≥ 0")
    return kappa((n - 1) * r, (n - 1) * r) + 1


def bin_ra(n: int, r: int, s: Optional[int] = None,
           budgets: Budgets = DEFAULT_BUDGETS) -> RaAtomStructure:
    """
    Bin(n, r) con multiplicidad s (por defecto ψ(n, r)): átomos Id y a^k(i, j), i < n-1, j < r, k < s.
    Prohibidos: (Id, b, c) con b ≠ c, y (a^k(i,j), a^k'(i,j), a^k*(i,j')) con j' ≤ j.
    """
    if n < 3 or r < 1:
        raise StructureError("Bin(n, r) requiere n ≥ 3 y r ≥ 1")
    if s is None:
        s = compute_psi(n, r)
    if s < 1:
        raise StructureError("La multiplicidad debe ser positiva")
    count = 1 + (n - 1) * r * s
    if count > budgets.max_atoms:
        raise BudgetExceeded("max_atoms", budgets.max_atoms, count)
    coords = [(k, i, j) for i in range(n - 1) for j in range(r) for k in range(s)]
    labels = ["Id"] + [f"a{k}({i},{j})" for k, i, j in coords]

    def forbidden(a, b, c):
        if a == 0:
            return b != c
        if 0 in (b, c):
            return False
        (_, i1, j1), (_, i2, j2), (_, i3, j3) = coords[a - 1], coords[b - 1], coords[c - 1]
        return i1 == i2 == i3 and j1 == j2 and j3 <= j1

    S = RaAtomStructure.from_forbidden(labels, [0], range(count), forbidden,
                                       {"kind": "bin", "params": {"n": n, "r": r, "s": s}})
    log.info("bin(%d,%d,%d): %d átomos", n, r, s, S.size)
    return S


# ============================================================================
# Arcoíris monocromático y estructuras flexibles
# ============================================================================
def rainbow_ra(num_greens: int, num_reds: int) -> RaAtomStructure:
    """Átomos Id, g0_i, r_j; prohibidos los triángulos con identidad y distintos, r_j r_j r_j y todo verde"""
    if num_greens < 1 or num_reds < 1:
        raise StructureError("Se necesita al menos un verde y un rojo")
    labels = ["1'"] + [f"g0_{i}" for i in range(num_greens)] + [f"r_{j}" for j in range(1, num_reds + 1)]
    greens = set(range(1, num_greens + 1))

    def forbidden(a, b, c):
        if 0 in (a, b, c):
            rest = [t for t in (a, b, c) if t != 0]
            return len(rest) == 2 and rest[0] != rest[1] or len(rest) == 1
        if {a, b, c} <= greens:
            return True
        return a == b == c

    return RaAtomStructure.from_forbidden(labels, [0], range(len(labels)), forbidden,
                                          {"kind": "rainbow", "params": {"greens": num_greens,
                                                                         "reds": num_reds}})


def flexible_ra(k: int) -> RaAtomStructure:
    """k átomos no identidad autoconversos; todo triple sin identidad es consistente"""
    if k < 1:
        raise StructureError("Se necesita al menos un átomo no identidad")
    labels = ["1'"] + [f"x{i}" for i in range(k)]

    def forbidden(a, b, c):
        if 0 in (a, b, c):
            rest = [t for t in (a, b, c) if t != 0]
            return len(rest) == 1 or (len(rest) == 2 and rest[0] != rest[1])
        return False

    return RaAtomStructure.from_forbidden(labels, [0], range(k + 1), forbidden,
                                          {"kind": "flexible", "params": {"k": k}})


def monochromatic_ra(k: int) -> RaAtomStructure:
    """Como flexible_ra pero con todos los triángulos monocromáticos prohibidos"""
    if k < 1:
        raise StructureError("Se necesita al menos un átomo no identidad")
    labels = ["1'"] + [f"x{i}" for i in range(k)]

    def forbidden(a, b, c):
        if 0 in (a, b, c):
            rest = [t for t in (a, b, c) if t != 0]
            return len(rest) == 1 or (len(rest) == 2 and rest[0] != rest[1])
        return a == b == c

    return RaAtomStructure.from_forbidden(labels, [0], range(k + 1), forbidden,
                                          {"kind": "monochromatic", "params": {"k": k}})


# ============================================================================
# Matrices básicas
# ============================================================================
@dataclass(frozen=True)
class BasicMatrix:
    """Matriz m×m de átomos: entries[x][y], con entries[y][x] el converso de entries[x][y]"""
    m: int
    entries: Tuple[Tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        return self.entries[x][y]

    def compose_map(self, tau) -> "BasicMatrix":
        """(f∘τ)(x, y) = f(τ(x), τ(y))"""
        return BasicMatrix(self.m, tuple(tuple(self.entries[tau[x]][tau[y]] for y in range(self.m))
                                         for x in range(self.m)))

    def label(self, S: RaAtomStructure) -> str:
        cells = [S.atoms[self.entries[x][y]] for y in range(self.m) for x in range(y)]
        return "[" + ",".join(cells) + "]"


def enumerate_basic_matrices(S: RaAtomStructure, m: int,
                             budgets: Budgets = DEFAULT_BUDGETS) -> List[BasicMatrix]:
    """Todas las matrices básicas sobre S, en orden determinista (celdas por columna)"""
    if m < 2:
        raise StructureError("Las matrices básicas requieren m ≥ 2")
    cells = [(x, y) for y in range(m) for x in range(y)]
    f = [[-1] * m for _ in range(m)]
    found: List[BasicMatrix] = []
    conv = S.converse
    identities = sorted(S.identity)

    def consistent_at(x, y):
        for z in range(m):
            if f[x][z] >= 0 and f[z][y] >= 0 and not S.is_consistent(f[x][y], f[x][z], f[z][y]):
                return False
        return True

    def fill(pos):
        if pos == len(cells):
            found.append(BasicMatrix(m, tuple(tuple(row) for row in f)))
            if len(found) > budgets.max_matrices:
                raise BudgetExceeded("max_matrices", budgets.max_matrices, len(found))
            return
        x, y = cells[pos]
        for a in range(S.size):
            f[x][y], f[y][x] = a, conv[a]
            if consistent_at(x, y) and consistent_at(y, x):
                fill(pos + 1)
        f[x][y] = f[y][x] = -1

    def fill_diagonal(x):
        if x == m:
            fill(0)
            return
        for e in identities:
            f[x][x] = e
            if S.is_consistent(e, e, e):
                fill_diagonal(x + 1)
        f[x][x] = -1

    fill_diagonal(0)
    return found


def matrices_to_structure(S: RaAtomStructure, m: int, matrices: List[BasicMatrix]) -> CaAtomStructure:
    """Mat_m(S): ≡_x coincide fuera de x, D_xy = {f(x,y) identidad}, ≡_xy es f ↦ f∘[x,y]"""
    index = {f: k for k, f in enumerate(matrices)}
    identity = S.identity

    def off(f, x):
        return tuple(f(w, z) for w in range(m) for z in range(m) if x not in (w, z))

    keys = [[off(f, x) for f in matrices] for x in range(m)]
    diag = {(x, y): to_mask(k for k, f in enumerate(matrices) if f(x, y) in identity)
            for x in range(m) for y in range(m)}
    subst = {}
    for x in range(m):
        for y in range(x + 1, m):
            tau = list(range(m))
            tau[x], tau[y] = y, x
            subst[(x, y)] = tuple(index[f.compose_map(tau)] for f in matrices)
    return CaAtomStructure(
        dimension=m,
        atoms=tuple(f.label(S) for f in matrices),
        diag=diag,
        cyl=cyl_from_keys(keys),
        flavor=Flavor.PEA,
        subst=subst,
        provenance={"kind": "basic_matrices", "params": {"m": m}, "source": dict(S.provenance)},
    )


def basic_matrices(S: RaAtomStructure, m: int, budgets: Budgets = DEFAULT_BUDGETS) -> CaAtomStructure:
    matrices = enumerate_basic_matrices(S, m, budgets)
    log.info("Mat_%d: %d matrices básicas", m, len(matrices))
    return matrices_to_structure(S, m, matrices)


# ============================================================================
# Estructura de funciones ⁿk
# ============================================================================
def function_structure(n: int, k: int = 2, budgets: Budgets = DEFAULT_BUDGETS) -> CaAtomStructure:
    """
    Átomos: todas las funciones n -> k. D_ij = {f : f(i) = f(j)}, f ≡_i g si coinciden fuera de i,
    y ≡_ij permuta las coordenadas i y j.
    """
    if n < 2 or k < 1:
        raise StructureError("ⁿk requiere n ≥ 2 y k ≥ 1")
    budgets.check("max_atoms", k ** n)
    atoms = list(product(range(k), repeat=n))
    index = {f: a for a, f in enumerate(atoms)}
    keys = [[f[:i] + f[i + 1:] for f in atoms] for i in range(n)]
    diag = {(i, j): to_mask(a for a, f in enumerate(atoms) if f[i] == f[j]) for i in range(n) for j in range(n)}
    subst = {}
    for i in range(n):
        for j in range(i + 1, n):
            image = []
            for f in atoms:
                g = list(f)
                g[i], g[j] = g[j], g[i]
                image.append(index[tuple(g)])
            subst[(i, j)] = tuple(image)
    S = CaAtomStructure(
        dimension=n,
        atoms=tuple("".join(str(v) for v in f) for f in atoms),
        diag=diag,
        cyl=cyl_from_keys(keys),
        flavor=Flavor.PEA,
        subst=subst,
        provenance={"kind": "functions", "params": {"n": n, "k": k}},
    )
    log.info("function_structure: %d átomos en dimensión %d", S.size, n)
    return S
