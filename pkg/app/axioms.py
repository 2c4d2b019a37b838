"""
Verificación de estructuras de átomos y de las listas de axiomas (CA, PTA, TA, PEA)
sobre el álgebra compleja Cm(S)
"""
import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .atom_structures import (CaAtomStructure, Flavor, RaAtomStructure, StructureError,
                              bits, full_mask, peircean_orbit)
from .complex_algebra import compile_term
from .config import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .report import CheckReport

log = logging.getLogger(__name__)

FULL_POWERSET_LIMIT = 16


# ============================================================================
# Estructuras RA
# ============================================================================
def check_ra_atomstructure(S: RaAtomStructure) -> CheckReport:
    """Involución del converso, ciclo de Peirce, ley de identidad y asociatividad atómica"""
    report = CheckReport("ra-atomstructure")
    k = S.size
    conv = S.converse

    for a in range(k):
        if conv[conv[a]] != a:
            report.fail("involucion", {"atom": S.atoms[a]}, lhs=conv[conv[a]], rhs=a)

    involutive = report.passed
    for t in sorted(S.consistent):
        report.count("triples")
        if not involutive:
            break
        missing = sorted(u for u in peircean_orbit(t, conv) if u not in S.consistent)
        if missing:
            report.fail("peirce", {"triple": list(t), "transform": list(missing[0])})

    for e in sorted(S.identity):
        for a, b in product(range(k), repeat=2):
            if a != b and (S.is_consistent(a, e, b) or S.is_consistent(a, b, e)):
                report.fail("identidad", {"identity": S.atoms[e], "a": S.atoms[a], "b": S.atoms[b]})
    for a in range(k):
        if not any(S.is_consistent(a, a, e) for e in S.identity):
            report.fail("identidad", {"atom": S.atoms[a], "side": "derecha"})
        if not any(S.is_consistent(a, e, a) for e in S.identity):
            report.fail("identidad", {"atom": S.atoms[a], "side": "izquierda"})

    for a, b, c in product(range(k), repeat=3):
        report.count("associativity_cases")
        left = S.compose(S.compose_atoms(a, b), 1 << c)
        right = S.compose(1 << a, S.compose_atoms(b, c))
        if left != right:
            report.fail("asociatividad", {"a": S.atoms[a], "b": S.atoms[b], "c": S.atoms[c]},
                        lhs=list(bits(left)), rhs=list(bits(right)))

    report.stats["atoms"] = k
    log.info("Estructura RA de %d átomos: %s", k, "aprobada" if report.passed else "fallida")
    return report.sort()


# ============================================================================
# Estructuras CA
# ============================================================================
def check_ca_atomstructure(S: CaAtomStructure) -> CheckReport:
    """Reflexividad y simetría de ≡_i y diagonales totales; las sustituciones se validan al construir"""
    report = CheckReport("ca-atomstructure")
    n, k = S.dimension, S.size
    for i in range(n):
        for a in range(k):
            if not S.related(i, a, a):
                report.fail("cyl.reflexiva", {"i": i, "atom": S.atoms[a]})
            for b in bits(S.cyl[i][a]):
                if not S.related(i, b, a):
                    report.fail("cyl.simetrica", {"i": i, "a": S.atoms[a], "b": S.atoms[b]})
        report.stats[f"transitive_{i}"] = S.cyl_is_equivalence(i)
        if S.diagonal(i, i) != S.full:
            report.fail("diag.total", {"i": i})
    return report.sort()


# ============================================================================
# Listas de axiomas
# ============================================================================
class AxiomVariant(Enum):
    CA = "CA"
    PTA = "PTA"
    TA = "TA"
    PEA = "PEA"


def _always(**_):
    return True


def _distinct(**idx):
    values = list(idx.values())
    return len(set(values)) == len(values)


@dataclass(frozen=True)
class Axiom:
    """Ecuación (o desigualdad) entre plantillas de términos con índices {i}, {j}, ..."""
    ident: str
    lhs: str
    rhs: str
    relation: str = "="
    indices: str = ""
    condition: Callable[..., bool] = _always

    def variables(self) -> Tuple[str, ...]:
        found = set(re.findall(r"\b([xy])\b", self.lhs + " " + self.rhs))
        return tuple(sorted(found))

    def instances(self, dimension: int):
        for values in product(range(dimension), repeat=len(self.indices)):
            idx = dict(zip(self.indices, values))
            if self.condition(**idx):
                yield idx, self.lhs.format(**idx), self.rhs.format(**idx)


CA_AXIOMS = [
    Axiom("C1", "c_{i}(0)", "0", indices="i"),
    Axiom("C2", "x", "c_{i}(x)", "<=", "i"),
    Axiom("C3", "c_{i}(x * c_{i}(y))", "c_{i}(x) * c_{i}(y)", indices="i"),
    Axiom("C4", "c_{i}(c_{j}(x))", "c_{j}(c_{i}(x))", indices="ij", condition=lambda i, j: i < j),
    Axiom("C5", "d_{i}_{i}", "1", indices="i"),
    Axiom("C6", "d_{i}_{j}", "c_{k}(d_{i}_{k} * d_{k}_{j})", indices="ijk",
          condition=lambda i, j, k: k not in (i, j)),
    Axiom("C7", "d_{i}_{j} * c_{i}(d_{i}_{j} * x)", "x", "<=", "ij", condition=lambda i, j: i != j),
]

PTA_AXIOMS = [
    Axiom("C0", "c_{i}(x + y)", "c_{i}(x) + c_{i}(y)", indices="i"),
    Axiom("C1", "x", "c_{i}(x)", "<=", "i"),
    Axiom("C2", "c_{i}(c_{i}(x))", "c_{i}(x)", indices="i"),
    Axiom("C3", "c_{i}(-c_{i}(x))", "-c_{i}(x)", indices="i"),
    Axiom("C4*", "c_{j}(c_{i}(x)) * d_{j}_{k}", "c_{i}(c_{j}(x))", "<=", "ijk",
          condition=lambda i, j, k: i != j and k not in (i, j)),
    Axiom("C5", "d_{i}_{i}", "1", indices="i"),
    Axiom("C6", "d_{i}_{j}", "c_{k}(d_{i}_{k} * d_{k}_{j})", indices="ijk",
          condition=lambda i, j, k: k not in (i, j)),
    Axiom("C7", "d_{i}_{j} * c_{i}(d_{i}_{j} * x)", "x", "<=", "ij", condition=lambda i, j: i != j),
    Axiom("MGR", "s_{k}_{i}(s_{i}_{j}(s_{j}_{m}(s_{m}_{k}(c_{k}(x)))))",
          "s_{k}_{m}(s_{m}_{i}(s_{i}_{j}(s_{j}_{k}(c_{k}(x)))))", indices="ijkm",
          condition=lambda i, j, k, m: i != j and k not in (i, j, m) and m not in (i, j)),
]


def _substitution_axioms(prefix: str, star: bool) -> List[Axiom]:
    """Axiomas de sustituciones y transposiciones; star elige Fe5* en lugar de Q5"""
    p = prefix
    axioms = [
        Axiom(f"{p}0", "s_{i}_{i}(x)", "x", indices="i"),
        Axiom(f"{p}0", "sw_{i}_{i}(x)", "x", indices="i"),
        Axiom(f"{p}0", "d_{i}_{i}", "1", indices="i"),
        Axiom(f"{p}0", "sw_{i}_{j}(x)", "sw_{j}_{i}(x)", indices="ij", condition=lambda i, j: i < j),
        Axiom(f"{p}1", "x", "c_{i}(x)", "<=", "i"),
        Axiom(f"{p}2", "c_{i}(x + y)", "c_{i}(x) + c_{i}(y)", indices="i"),
        Axiom(f"{p}3", "s_{i}_{j}(c_{i}(x))", "c_{i}(x)", indices="ij"),
        Axiom(f"{p}4", "c_{i}(s_{i}_{j}(x))", "s_{i}_{j}(x)", indices="ij", condition=lambda i, j: i != j),
    ]
    if star:
        axioms.append(Axiom(f"{p}5*", "s_{i}_{j}(s_{k}_{m}(x))", "s_{k}_{m}(s_{i}_{j}(x))", indices="ijkm",
                            condition=lambda i, j, k, m: i not in (k, m) and j not in (k, m)))
    else:
        axioms.append(Axiom(f"{p}5", "s_{i}_{j}(c_{k}(x))", "c_{k}(s_{i}_{j}(x))", indices="ijk",
                            condition=lambda i, j, k: k not in (i, j)))
    axioms += [
        Axiom(f"{p}6", "s_{i}_{j}(x + y)", "s_{i}_{j}(x) + s_{i}_{j}(y)", indices="ij"),
        Axiom(f"{p}6", "s_{i}_{j}(-x)", "-s_{i}_{j}(x)", indices="ij"),
        Axiom(f"{p}6", "sw_{i}_{j}(x + y)", "sw_{i}_{j}(x) + sw_{i}_{j}(y)", indices="ij"),
        Axiom(f"{p}6", "sw_{i}_{j}(-x)", "-sw_{i}_{j}(x)", indices="ij"),
        Axiom(f"{p}7", "sw_{i}_{j}(sw_{i}_{j}(x))", "x", indices="ij"),
        Axiom(f"{p}8", "sw_{i}_{j}(sw_{i}_{k}(x))", "sw_{j}_{k}(sw_{i}_{j}(x))", indices="ijk",
              condition=_distinct),
        Axiom(f"{p}9", "sw_{i}_{j}(s_{i}_{j}(x))", "s_{j}_{i}(x)", indices="ij"),
        Axiom(f"{p}10", "s_{i}_{j}(d_{i}_{j})", "1", indices="ij"),
        Axiom(f"{p}11", "x * d_{i}_{j}", "s_{i}_{j}(x)", "<=", "ij"),
    ]
    return axioms


TA_AXIOMS = _substitution_axioms("Fe", star=True)
PEA_AXIOMS = CA_AXIOMS + _substitution_axioms("Q", star=False)

AXIOM_LISTS: Dict[AxiomVariant, List[Axiom]] = {
    AxiomVariant.CA: CA_AXIOMS,
    AxiomVariant.PTA: PTA_AXIOMS,
    AxiomVariant.TA: TA_AXIOMS,
    AxiomVariant.PEA: PEA_AXIOMS,
}


# ============================================================================
# Casos de prueba para las variables
# ============================================================================
def _sampled_pairs(k: int, budget: int, seed: int) -> Tuple[List[Tuple[int, int]], bool]:
    total = k * (k - 1) // 2
    if total <= budget:
        return list(combinations(range(k), 2)), False
    rng = random.Random(seed)
    chosen = set()
    while len(chosen) < budget:
        a, b = rng.randrange(k), rng.randrange(k)
        if a != b:
            chosen.add((min(a, b), max(a, b)))
    return sorted(chosen), True


def argument_cases(S: CaAtomStructure, arity: int, full_powerset: bool,
                   budgets: Budgets) -> Tuple[List[Tuple[int, ...]], bool]:
    """
    Valores para las variables del axioma. Por defecto: 0, 1, singletons y uniones de dos átomos
    (una variable) o pares de singletons (dos variables); muestreo determinista si hay demasiados.
    """
    k = S.size
    full = full_mask(k)
    if full_powerset:
        if k > FULL_POWERSET_LIMIT:
            raise BudgetExceeded("full_powerset_atoms", FULL_POWERSET_LIMIT, k)
        subsets = list(range(1 << k))
        if arity == 1:
            return [(x,) for x in subsets], False
        second = subsets if k <= 8 else [0, full] + [1 << a for a in range(k)]
        return [(x, y) for x in subsets for y in second], False

    singles = [1 << a for a in range(k)]
    if arity == 1:
        pairs, sampled = _sampled_pairs(k, budgets.max_pair_cases, budgets.seed)
        return [(0,), (full,)] + [(s,) for s in singles] + [((1 << a) | (1 << b),) for a, b in pairs], sampled

    ordered = k * k
    if ordered <= budgets.max_pair_cases:
        cases = [(x, y) for x in singles for y in singles]
        sampled = False
    else:
        rng = random.Random(budgets.seed)
        chosen = sorted({(rng.randrange(k), rng.randrange(k)) for _ in range(budgets.max_pair_cases)})
        cases = [(1 << a, 1 << b) for a, b in chosen]
        sampled = True
    return [(0, 0), (full, full), (0, full), (full, 0)] + cases, sampled


def _required_flavor(variant: AxiomVariant, S: CaAtomStructure):
    if S.flavor == Flavor.DF:
        raise StructureError(f"La lista {variant.value} requiere diagonales; el sabor Df no las tiene")
    if variant in (AxiomVariant.TA, AxiomVariant.PEA) and not S.has_subst():
        raise StructureError(f"La lista {variant.value} requiere sustituciones s_ij")


def check_ca_axioms(S: CaAtomStructure, variant: AxiomVariant, full_powerset: bool = False,
                    budgets: Budgets = DEFAULT_BUDGETS) -> CheckReport:
    """Evalúa cada instancia de cada axioma de la lista sobre los casos de argumentos"""
    if isinstance(variant, str):
        variant = AxiomVariant(variant.upper().replace("_N", ""))
    _required_flavor(variant, S)
    report = CheckReport(f"axioms-{variant.value}")
    cases = {}
    compiled = {}

    for axiom in AXIOM_LISTS[variant]:
        variables = axiom.variables()
        arity = max(len(variables), 1)
        if arity not in cases:
            cases[arity] = argument_cases(S, arity, full_powerset, budgets)
            report.stats["sampled"] = report.stats.get("sampled", False) or cases[arity][1]
        for idx, lhs_text, rhs_text in axiom.instances(S.dimension):
            for text in (lhs_text, rhs_text):
                if text not in compiled:
                    compiled[text] = compile_term(S, text, ("x", "y"))
            lhs, rhs = compiled[lhs_text], compiled[rhs_text]
            report.count("instances")
            for args in cases[arity][0]:
                env = dict(zip(variables, args)) if variables else {}
                env.setdefault("x", 0)
                env.setdefault("y", 0)
                left, right = lhs(env), rhs(env)
                report.count("cases")
                ok = left == right if axiom.relation == "=" else left & ~right == 0
                if not ok:
                    witness = {"indices": idx}
                    for name in variables:
                        witness[name] = list(bits(env[name]))
                    report.fail(axiom.ident, witness, lhs=list(bits(left)), rhs=list(bits(right)),
                                message=f"{lhs_text} {axiom.relation} {rhs_text}")
                    break

    log.info("Axiomas %s sobre %d átomos: %s", variant.value, S.size, report.summary())
    return report.sort()


# ============================================================================
# Operadores t^i_j a nivel de átomos
# ============================================================================
def _t_map(i: int, j: int, n: int) -> Tuple[int, ...]:
    return tuple(j if k == i else k for k in range(n))


def check_t_operators(S: CaAtomStructure, max_length: int = 3) -> CheckReport:
    """
    t^i_j manda átomos en átomos, y palabras en t^i_j con la misma función inducida
    sobre índices coinciden en cada átomo.
    """
    report = CheckReport("t-operators")
    n = S.dimension
    generators = [(i, j) for i, j in permutations(range(n), 2)]
    for (i, j) in generators:
        for a in range(S.size):
            image = S.t_op(i, j, 1 << a)
            if image & (image - 1) or image == 0:
                report.fail("t.atomo", {"i": i, "j": j, "atom": S.atoms[a]}, lhs=list(bits(image)))

    groups: Dict[Tuple[int, ...], List[Tuple[Tuple[int, int], ...]]] = {}
    for length in range(1, max_length + 1):
        for word in product(generators, repeat=length):
            induced = []
            for k in range(n):
                v = k
                for (i, j) in word:
                    v = _t_map(i, j, n)[v]
                induced.append(v)
            groups.setdefault(tuple(induced), []).append(word)

    def apply(word, x):
        for (i, j) in reversed(word):
            x = S.t_op(i, j, x)
        return x

    for induced, words in sorted(groups.items()):
        for a in range(S.size):
            reference = apply(words[0], 1 << a)
            for word in words[1:]:
                report.count("comparisons")
                value = apply(word, 1 << a)
                if value != reference:
                    report.fail("t.palabras", {"atom": S.atoms[a], "word": [list(w) for w in word],
                                               "reference": [list(w) for w in words[0]]},
                                lhs=list(bits(value)), rhs=list(bits(reference)))
                    break
    return report.sort()
