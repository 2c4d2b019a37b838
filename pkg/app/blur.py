"""
Verificación de las condiciones de un blur complejo (I, J) sobre una estructura RA
"""
import logging
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import FrozenSet, List, Tuple

from .atom_structures import RaAtomStructure, StructureError, bits, to_mask
from .config import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .report import CheckReport

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlurInstance:
    S: RaAtomStructure
    I: FrozenSet[int]
    J: Tuple[FrozenSet[int], ...]
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise StructureError("El parámetro m del blur debe ser al menos 2")
        if self.I & self.S.identity:
            raise StructureError("I no puede contener identidades")
        for W in self.J:
            if not W <= self.I:
                raise StructureError(f"Miembro de J fuera de I: {sorted(W)}")

    @classmethod
    def all_subsets(cls, S: RaAtomStructure, size: int, m: int) -> "BlurInstance":
        """I = átomos no identidad, J = todos sus subconjuntos de tamaño size"""
        I = frozenset(S.non_identity())
        J = tuple(frozenset(c) for c in combinations(sorted(I), size))
        return cls(S, I, J, m)


def _names(S: RaAtomStructure, atoms) -> List[str]:
    return [S.atoms[a] for a in sorted(atoms)]


def _safe(S: RaAtomStructure, V, W, T) -> bool:
    """Ningún triángulo prohibido con un átomo de cada uno de V, W y T"""
    return all(S.is_consistent(a, b, c) for a in V for b in W for c in T)


def blur_check(B: BlurInstance, budgets: Budgets = DEFAULT_BUDGETS) -> CheckReport:
    """Las cinco condiciones en orden; se detiene en la primera que falla"""
    S, I, J, m = B.S, B.I, B.J, B.m
    report = CheckReport("blur")
    report.stats.update({"I": len(I), "J": len(J), "m": m})
    i_mask = to_mask(I)

    empty = next((W for W in J if not W), None)
    if empty is not None:
        report.fail("blur.no_vacios", {"W": []}, message="J contiene el conjunto vacío")
        return report

    covered = frozenset().union(*J) if J else frozenset()
    if covered != I:
        report.fail("blur.cubre_I", {"faltan": _names(S, I - covered)},
                    message="La unión de J no es I")
        return report

    for P in sorted(I):
        for W in J:
            comp = S.compose(1 << P, to_mask(W))
            missing = i_mask & ~comp
            if missing:
                report.fail("blur.composicion", {"P": S.atoms[P], "W": _names(S, W)},
                            lhs=_names(S, bits(missing)),
                            message="I no está contenido en P;W")
                return report

    _check_safety(B, budgets, report)
    if not report.passed:
        return report

    _check_intersections(B, report)
    return report


def _check_safety(B: BlurInstance, budgets: Budgets, report: CheckReport):
    S, I, J, m = B.S, B.I, B.J, B.m
    if all(S.is_consistent(a, b, c) for a in I for b in I for c in I):
        report.stats["safety_shortcut"] = True
        return
    tuples = len(J) ** (2 * (m - 1))
    if tuples > budgets.max_blur_tuples:
        raise BudgetExceeded("max_blur_tuples", budgets.max_blur_tuples, tuples)
    report.stats["safety_tuples"] = tuples

    # safe_for[(v, w)]: bitset de índices T de J seguros para (J[v], J[w])
    safe_for = {}
    for v, w in product(range(len(J)), repeat=2):
        safe_for[(v, w)] = to_mask(t for t in range(len(J)) if _safe(S, J[v], J[w], J[t]))

    full = (1 << len(J)) - 1
    for vs in product(range(len(J)), repeat=m - 1):
        for ws in product(range(len(J)), repeat=m - 1):
            candidates = full
            for v, w in zip(vs, ws):
                candidates &= safe_for[(v, w)]
                if not candidates:
                    break
            if not candidates:
                report.fail("blur.seguridad",
                            {"V": [_names(S, J[v]) for v in vs], "W": [_names(S, J[w]) for w in ws]},
                            message="Ningún T en J es seguro para todos los pares")
                return


def _check_intersections(B: BlurInstance, report: CheckReport):
    S, I, J, m = B.S, B.I, B.J, B.m
    i_mask = to_mask(I)
    witnesses = {}
    for P in sorted(I):
        for Q in sorted(I):
            witnesses.setdefault(S.compose(1 << P, 1 << Q) & i_mask, (P, Q))
    masks = sorted(witnesses)
    report.stats["composition_sets"] = len(masks)

    for choice in combinations_with_replacement(masks, m - 1):
        meet = i_mask
        for mask in choice:
            meet &= mask
        for W in J:
            if not meet & to_mask(W):
                pairs = [witnesses[mask] for mask in choice]
                report.fail("blur.interseccion",
                            {"W": _names(S, W),
                             "pares": [[S.atoms[p], S.atoms[q]] for p, q in pairs]},
                            message="W ∩ P2;Q2 ∩ ... ∩ Pm;Qm es vacío")
                return
    log.debug("blur: %d intersecciones verificadas", len(masks))
