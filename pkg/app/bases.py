"""
Puntos fijos de bases (cilíndrica y relacional) y la verificación de Mat_m como base cilíndrica
"""
import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .atom_structures import CaAtomStructure, RaAtomStructure
from .config import Budgets, DEFAULT_BUDGETS
from .constructions import BasicMatrix, enumerate_basic_matrices
from .networks import BasisCandidate, Network, enumerate_networks
from .report import CheckReport

log = logging.getLogger(__name__)


def _matrix_off(f: BasicMatrix, *nodes: int) -> Tuple[int, ...]:
    avoid = set(nodes)
    return tuple(f(u, v) for u in range(f.m) for v in range(f.m) if u not in avoid and v not in avoid)


# ============================================================================
# Base cilíndrica
# ============================================================================
def _good_group(S: CaAtomStructure, M: Network, z: int, available: Dict[Tuple[int, ...], int]) -> bool:
    """Toda demanda (x̄, i, a) que evita z tiene testigo w ≠ z en M o en algún miembro vivo ≡_z M"""
    n = S.dimension
    others = [v for v in range(M.nodes) if v != z]
    for t in product(others, repeat=n):
        label = M.label(t)
        for i in range(n):
            present = available.get(t[:i] + (z,) + t[i + 1:], 0)
            for w in others:
                present |= 1 << M.label(t[:i] + (w,) + t[i + 1:])
            for a in range(S.size):
                if S.related(i, a, label) and not present >> a & 1:
                    return False
    return True


def basis_fixpoint(S: CaAtomStructure, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> Optional[BasisCandidate]:
    """
    Máximo punto fijo: desde todas las redes de n nodos, borra las que tienen una demanda de
    cilindrificación sin testigo entre las sobrevivientes. None si el resultado no cubre todos los átomos.
    """
    members = enumerate_networks(S, n, budgets)
    keys = [[N.key_off(z) for z in range(n)] for N in members]
    alive: Set[int] = set(range(len(members)))
    passes = 0
    while True:
        passes += 1
        groups: Dict[Tuple[int, Tuple[int, ...]], List[int]] = {}
        for idx in sorted(alive):
            for z in range(n):
                groups.setdefault((z, keys[idx][z]), []).append(idx)
        dead: Set[int] = set()
        for (z, _), group in groups.items():
            available: Dict[Tuple[int, ...], int] = {}
            for idx in group:
                for t, a in members[idx].items():
                    if z in t:
                        available[t] = available.get(t, 0) | (1 << a)
            if not _good_group(S, members[group[0]], z, available):
                dead.update(group)
        log.debug("basis_fixpoint: pasada %d, %d vivas, %d borradas", passes, len(alive), len(dead))
        if not dead:
            break
        alive -= dead

    stats = {"initial": len(members), "passes": passes, "removed": len(members) - len(alive)}
    base = tuple(range(S.dimension))
    covered = {members[idx].label(base) for idx in alive}
    if len(covered) < S.size:
        log.info("basis_fixpoint: sin base (%d de %d átomos cubiertos)", len(covered), S.size)
        return None
    log.info("basis_fixpoint: base con %d redes tras %d pasadas", len(alive), passes)
    return BasisCandidate(S, [members[idx] for idx in sorted(alive)], stats)


# ============================================================================
# Base relacional
# ============================================================================
def _good_matrix_group(f: BasicMatrix, others: Sequence[int], available: Set[Tuple[int, int, int, int]],
                       demands: List[List[Tuple[int, int]]]) -> bool:
    for x in others:
        for y in others:
            for b, c in demands[f(x, y)]:
                if (x, y, b, c) not in available and not any(f(x, w) == b and f(w, y) == c for w in others):
                    return False
    return True


def relational_basis_fixpoint(S: RaAtomStructure, n: int,
                              budgets: Budgets = DEFAULT_BUDGETS) -> Optional[BasisCandidate]:
    """Como basis_fixpoint con redes RA de n nodos y el testigo de composición M(x, w) = b, M(w, y) = c"""
    members = enumerate_basic_matrices(S, n, budgets)
    demands = [[(b, c) for b in range(S.size) for c in range(S.size) if S.is_consistent(a, b, c)]
               for a in range(S.size)]
    keys = [[_matrix_off(f, z) for z in range(n)] for f in members]
    alive: Set[int] = set(range(len(members)))
    passes = 0
    while True:
        passes += 1
        groups: Dict[Tuple[int, Tuple[int, ...]], List[int]] = {}
        for idx in sorted(alive):
            for z in range(n):
                groups.setdefault((z, keys[idx][z]), []).append(idx)
        dead: Set[int] = set()
        for (z, _), group in groups.items():
            others = [v for v in range(n) if v != z]
            available = {(x, y, members[idx](x, z), members[idx](z, y)) for idx in group
                         for x in others for y in others}
            if not _good_matrix_group(members[group[0]], others, available, demands):
                dead.update(group)
        log.debug("relational_basis_fixpoint: pasada %d, %d vivas, %d borradas", passes, len(alive), len(dead))
        if not dead:
            break
        alive -= dead

    stats = {"initial": len(members), "passes": passes, "removed": len(members) - len(alive)}
    covered = {members[idx](0, 1) for idx in alive}
    if len(covered) < S.size:
        log.info("relational_basis_fixpoint: sin base")
        return None
    log.info("relational_basis_fixpoint: base con %d redes", len(alive))
    return BasisCandidate(S, [members[idx] for idx in sorted(alive)], stats)


# ============================================================================
# Mat_m como base cilíndrica
# ============================================================================
def cylindric_basis_check(S: RaAtomStructure, m: int, budgets: Budgets = DEFAULT_BUDGETS,
                          matrices: Optional[Sequence[BasicMatrix]] = None) -> CheckReport:
    """Cobertura, testigo y amalgamación de H = Mat_m(S)"""
    report = CheckReport("base_cilindrica")
    H = list(matrices) if matrices is not None else enumerate_basic_matrices(S, m, budgets)
    report.stats["matrices"] = len(H)

    covered = {f(0, 1) for f in H}
    for a in range(S.size):
        if a not in covered:
            report.fail("base.cobertura", {"atomo": S.atoms[a]})

    # testigo: x, y, z distintos y f(x, y) ≤ b;c exigen g ≡_z f con g(x, z) = b y g(z, y) = c
    offs = [[_matrix_off(f, z) for z in range(m)] for f in H]
    available: Dict[Tuple[int, Tuple[int, ...]], Set[Tuple[int, int, int, int]]] = {}
    for idx, g in enumerate(H):
        for z in range(m):
            slot = available.setdefault((z, offs[idx][z]), set())
            slot.update((x, y, g(x, z), g(z, y)) for x in range(m) for y in range(m) if z not in (x, y))
    for idx, f in enumerate(H):
        for x, y, z in product(range(m), repeat=3):
            if len({x, y, z}) < 3:
                continue
            slot = available[(z, offs[idx][z])]
            for b in range(S.size):
                for c in range(S.size):
                    if S.is_consistent(f(x, y), b, c) and (x, y, b, c) not in slot:
                        report.fail("base.testigo", {"matriz": f.label(S), "x": x, "y": y, "z": z},
                                    lhs=S.atoms[b], rhs=S.atoms[c])

    # amalgamación: M ≡_xy N exige L con M ≡_x L ≡_y N
    for x in range(m):
        for y in range(x + 1, m):
            pairs = {(offs[idx][x], offs[idx][y]) for idx in range(len(H))}
            classes: Dict[Tuple[int, ...], Tuple[Dict, Dict]] = {}
            for idx, f in enumerate(H):
                left, right = classes.setdefault(_matrix_off(f, x, y), ({}, {}))
                left.setdefault(offs[idx][x], idx)
                right.setdefault(offs[idx][y], idx)
            for left, right in classes.values():
                missing = next(((i_m, i_n) for kx, i_m in left.items() for ky, i_n in right.items()
                                if (kx, ky) not in pairs), None)
                if missing:
                    report.fail("base.amalgama", {"M": H[missing[0]].label(S), "N": H[missing[1]].label(S),
                                                  "x": x, "y": y})
    log.info("cylindric_basis_check: %s", report.summary())
    return report.sort()
