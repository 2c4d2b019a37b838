"""
Redes atómicas e hiperredes sobre estructuras cilíndricas, y las cláusulas de (hiper)base
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .atom_structures import CaAtomStructure, RaAtomStructure, StructureError, bits
from .config import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .constructions import BasicMatrix
from .report import CheckReport

log = logging.getLogger(__name__)

NodeTuple = Tuple[int, ...]


def tuple_index(t: Sequence[int], k: int) -> int:
    """Posición de t en el orden lexicográfico de k^n"""
    idx = 0
    for x in t:
        idx = idx * k + x
    return idx


def all_tuples(k: int, n: int) -> List[NodeTuple]:
    return list(product(range(k), repeat=n))


# ============================================================================
# Redes
# ============================================================================
@dataclass(frozen=True)
class Network:
    """Red atómica total: labels[tuple_index(t)] es el átomo de la n-tupla t sobre los nodos 0..nodes-1"""
    dimension: int
    nodes: int
    labels: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.nodes ** self.dimension:
            raise StructureError("Una red debe etiquetar todas las n-tuplas de nodos")

    def label(self, t: Sequence[int]) -> int:
        return self.labels[tuple_index(t, self.nodes)]

    def tuples(self) -> Iterator[NodeTuple]:
        return product(range(self.nodes), repeat=self.dimension)

    def items(self) -> Iterator[Tuple[NodeTuple, int]]:
        return zip(self.tuples(), self.labels)

    def permute(self, perm: Sequence[int]) -> "Network":
        """Renombra el nodo x como perm[x]"""
        labels = [0] * len(self.labels)
        for t, a in self.items():
            labels[tuple_index([perm[x] for x in t], self.nodes)] = a
        return Network(self.dimension, self.nodes, tuple(labels))

    def compose(self, sigma: Sequence[int]) -> "Network":
        """(N∘σ)(x̄) = N(σ(x̄)) para σ: nodos -> nodos"""
        return Network(self.dimension, self.nodes,
                       tuple(self.label([sigma[x] for x in t]) for t in self.tuples()))

    def restrict(self, keep: Sequence[int]) -> "Network":
        """Subred sobre los nodos keep, renumerados en ese orden"""
        k = len(keep)
        return Network(self.dimension, k,
                       tuple(self.label([keep[x] for x in t]) for t in product(range(k), repeat=self.dimension)))

    def delete_node(self, z: int) -> "Network":
        return self.restrict([x for x in range(self.nodes) if x != z])

    def key_off(self, *nodes: int) -> Tuple[int, ...]:
        """Etiquetas de las tuplas que evitan los nodos dados (para ≡_x y ≡_xy)"""
        avoid = set(nodes)
        return tuple(a for t, a in self.items() if avoid.isdisjoint(t))

    def canonical(self) -> "Network":
        """Mínimo lexicográfico sobre los renombramientos de nodos"""
        best = self
        for perm in permutations(range(self.nodes)):
            candidate = self.permute(perm)
            if candidate.labels < best.labels:
                best = candidate
        return best

    def to_dict(self) -> Dict[str, object]:
        return {"nodes": self.nodes, "dimension": self.dimension,
                "labels": {str(t): a for t, a in self.items()}}


def _swap(t: NodeTuple, i: int, j: int) -> NodeTuple:
    s = list(t)
    s[i], s[j] = s[j], s[i]
    return tuple(s)


def validate_network(N: Network, S: CaAtomStructure) -> CheckReport:
    """Diagonales, variantes ≡_i y, si hay sustituciones, la cláusula de transposición"""
    report = CheckReport("red")
    n, k = N.dimension, N.nodes
    if n != S.dimension:
        report.fail("red.dimension", {"red": n, "estructura": S.dimension})
        return report
    for t, a in N.items():
        if not 0 <= a < S.size:
            report.fail("red.atomo", {"tupla": list(t)}, lhs=a)
    if not report.passed:
        return report

    for t, a in N.items():
        for i in range(n):
            for j in range(i + 1, n):
                if t[i] == t[j] and not S.diagonal(i, j) >> a & 1:
                    report.fail("red.diagonal", {"tupla": list(t), "i": i, "j": j}, lhs=S.atoms[a])
        for i in range(n):
            for d in range(k):
                if d == t[i]:
                    continue
                u = t[:i] + (d,) + t[i + 1:]
                b = N.label(u)
                if t < u and not (S.related(i, a, b) and S.related(i, b, a)):
                    report.fail("red.cilindro", {"tupla": list(t), "variante": list(u), "i": i},
                                lhs=S.atoms[a], rhs=S.atoms[b])
        if S.has_subst():
            for i in range(n):
                for j in range(i + 1, n):
                    expected = S.subst_atom(i, j, a)
                    got = N.label(_swap(t, i, j))
                    if got != expected:
                        report.fail("red.sustitucion", {"tupla": list(t), "i": i, "j": j},
                                    lhs=S.atoms[got], rhs=S.atoms[expected])
    report.stats["tuples"] = len(N.labels)
    return report


def _complete(S: CaAtomStructure, k: int, fixed: Dict[int, int], required: Dict[int, int],
              order: Sequence[NodeTuple]) -> Iterator[Tuple[int, ...]]:
    """
    Completa por retroceso las etiquetas de las tuplas de order (k nodos),
    partiendo de las etiquetas fijas y respetando las restricciones required[idx] (bitsets).
    """
    n = S.dimension
    labels = [-1] * (k ** n)
    for idx, a in fixed.items():
        labels[idx] = a
    subst = S.has_subst()
    plan = []
    for t in order:
        idx = tuple_index(t, k)
        if labels[idx] >= 0:
            continue
        diag = S.full
        for i in range(n):
            for j in range(i + 1, n):
                if t[i] == t[j]:
                    diag &= S.diagonal(i, j)
        variants = [(i, tuple_index(t[:i] + (d,) + t[i + 1:], k))
                    for i in range(n) for d in range(k) if d != t[i]]
        swaps = [(i, j, tuple_index(_swap(t, i, j), k)) for i in range(n) for j in range(i + 1, n)] if subst else []
        plan.append((idx, diag & required.get(idx, S.full), variants, swaps))

    def rec(pos):
        if pos == len(plan):
            yield tuple(labels)
            return
        idx, mask, variants, swaps = plan[pos]
        for i, u in variants:
            b = labels[u]
            if b >= 0:
                mask &= S.cyl[i][b]
                if not S.cyl_is_equivalence(i):
                    mask &= sum(1 << c for c in bits(mask) if S.related(i, c, b))
                if not mask:
                    return
        for i, j, u in swaps:
            if u == idx:
                mask &= sum(1 << a for a in bits(mask) if S.subst_atom(i, j, a) == a)
            elif labels[u] >= 0:
                mask &= 1 << S.subst_atom(i, j, labels[u])
            if not mask:
                return
        for a in bits(mask):
            labels[idx] = a
            yield from rec(pos + 1)
        labels[idx] = -1

    yield from rec(0)


def enumerate_networks(S: CaAtomStructure, k: int, budgets: Budgets = DEFAULT_BUDGETS,
                       reverse: bool = False) -> List[Network]:
    """Todas las redes válidas sobre los nodos 0..k-1, en orden determinista"""
    if k < S.dimension:
        raise StructureError(f"Se necesitan al menos {S.dimension} nodos")
    order = all_tuples(k, S.dimension)
    if reverse:
        order.reverse()
    found = []
    for labels in _complete(S, k, {}, {}, order):
        found.append(Network(S.dimension, k, labels))
        if len(found) > budgets.max_networks:
            raise BudgetExceeded("max_networks", budgets.max_networks, len(found))
    found.sort(key=lambda N: N.labels)
    log.debug("enumerate_networks: %d redes de %d nodos", len(found), k)
    return found


def networks_with_label(S: CaAtomStructure, k: int, t: NodeTuple, a: int) -> Iterator[Network]:
    """Redes de k nodos con N(t) = a"""
    order = all_tuples(k, S.dimension)
    for labels in _complete(S, k, {}, {tuple_index(t, k): 1 << a}, order):
        yield Network(S.dimension, k, labels)


def extend_network(S: CaAtomStructure, N: Network, required: Optional[Dict[NodeTuple, int]] = None
                   ) -> Iterator[Network]:
    """Extensiones válidas de N con un nodo nuevo (el último), con etiquetas exigidas opcionales"""
    k = N.nodes + 1
    fixed = {tuple_index(t, k): a for t, a in N.items()}
    req = {tuple_index(t, k): 1 << a for t, a in (required or {}).items()}
    order = [t for t in all_tuples(k, S.dimension) if N.nodes in t]
    for labels in _complete(S, k, fixed, req, order):
        yield Network(S.dimension, k, labels)


def network_from_matrix(f: BasicMatrix, matrices: Sequence[BasicMatrix]) -> Network:
    """N_f(ī) = f∘ī sobre Mat_m: cada m-tupla de nodos se etiqueta con la matriz (f(i_x, i_y))"""
    index = {g: a for a, g in enumerate(matrices)}
    m = f.m
    labels = []
    for t in product(range(m), repeat=m):
        labels.append(index[f.compose_map(t)])
    return Network(m, m, tuple(labels))


# ============================================================================
# Hiperredes
# ============================================================================
@dataclass(frozen=True)
class Hypernetwork:
    """Red más etiquetas hiper (índices en Λ = 0..|Λ|-1) para sucesiones de longitud distinta de la dimensión"""
    network: Network
    hyperlabels: Dict[NodeTuple, int] = field(default_factory=dict)

    @property
    def nodes(self) -> int:
        return self.network.nodes

    def frozen(self) -> Tuple[Tuple[int, ...], Tuple[Tuple[NodeTuple, int], ...]]:
        return self.network.labels, tuple(sorted(self.hyperlabels.items()))

    def key_off(self, *nodes: int):
        avoid = set(nodes)
        hyper = tuple(sorted((s, l) for s, l in self.hyperlabels.items() if avoid.isdisjoint(s)))
        return self.network.key_off(*nodes), hyper

    def compose(self, sigma: Sequence[int]) -> "Hypernetwork":
        hyper = {s: self.hyperlabels[tuple(sigma[x] for x in s)] for s in self.hyperlabels
                 if tuple(sigma[x] for x in s) in self.hyperlabels}
        return Hypernetwork(self.network.compose(sigma), hyper)


def hyper_sequences(nodes: int, dimension: int, width: int) -> Iterator[NodeTuple]:
    for length in range(1, width + 1):
        if length != dimension:
            yield from product(range(nodes), repeat=length)


def uniform_hypernetwork(N: Network, width: Optional[int] = None, label: int = 0) -> Hypernetwork:
    """Hiperred con una única etiqueta en todas las sucesiones no atómicas"""
    width = N.nodes + 1 if width is None else width
    return Hypernetwork(N, {s: label for s in hyper_sequences(N.nodes, N.dimension, width)})


def _same_node(N: Network, S: CaAtomStructure, x: int, y: int) -> bool:
    """x e y son iguales según la diagonal: N(x, y, z̄) ≤ d_01 para algún z̄"""
    if x == y:
        return True
    d01 = S.diagonal(0, 1)
    for rest in product(range(N.nodes), repeat=N.dimension - 2):
        if d01 >> N.label((x, y) + rest) & 1:
            return True
    return False


def validate_hypernetwork(H: Hypernetwork, S: CaAtomStructure, lambda_size: int,
                          width: Optional[int] = None) -> CheckReport:
    report = validate_network(H.network, S)
    report.name = "hiperred"
    N = H.network
    width = N.nodes + 1 if width is None else width
    for s, l in sorted(H.hyperlabels.items()):
        if len(s) == N.dimension or not 1 <= len(s) <= width:
            report.fail("hiper.longitud", {"sucesion": list(s)})
        elif not 0 <= l < lambda_size:
            report.fail("hiper.etiqueta", {"sucesion": list(s)}, lhs=l)
    for s in hyper_sequences(N.nodes, N.dimension, width):
        if s not in H.hyperlabels:
            report.fail("hiper.total", {"sucesion": list(s)})
    if not report.passed:
        return report

    same = [[_same_node(N, S, x, y) for y in range(N.nodes)] for x in range(N.nodes)]
    seqs = sorted(H.hyperlabels)
    for a_idx, s in enumerate(seqs):
        for u in seqs[a_idx + 1:]:
            if len(s) == len(u) and all(same[x][y] for x, y in zip(s, u)) \
                    and H.hyperlabels[s] != H.hyperlabels[u]:
                report.fail("hiper.equivalentes", {"x": list(s), "y": list(u)},
                            lhs=H.hyperlabels[s], rhs=H.hyperlabels[u])
    return report


# ============================================================================
# Candidatas a (hiper)base
# ============================================================================
@dataclass
class BasisCandidate:
    """Conjunto finito de redes (hiperredes o redes RA) sobre una misma estructura"""
    structure: Union[CaAtomStructure, RaAtomStructure]
    members: List[object]
    stats: Dict[str, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.members)

    def networks(self) -> List[Network]:
        return [m.network if isinstance(m, Hypernetwork) else m for m in self.members]


def _as_hyper(member) -> Hypernetwork:
    return member if isinstance(member, Hypernetwork) else Hypernetwork(member, {})


def check_hyperbasis(H: Sequence[object], S: CaAtomStructure, lambda_size: int = 1,
                     symmetric: bool = False) -> CheckReport:
    """
    Cláusulas de hiperbase sobre H (redes o hiperredes de n nodos):
    cobertura de átomos, testigo de cilindrificación dentro de H, amalgamación y, a pedido, simetría.
    """
    report = CheckReport("hiperbase")
    members = [_as_hyper(m) for m in H]
    report.stats["members"] = len(members)
    n = S.dimension
    nodes = members[0].nodes if members else n
    if any(m.nodes != nodes for m in members):
        raise StructureError("Todas las hiperredes deben tener el mismo número de nodos")

    base = tuple(range(n))
    covered = {m.network.label(base) for m in members} if nodes >= n else set()
    for a in range(S.size):
        if a not in covered:
            report.fail("hiperbase.cobertura", {"atomo": S.atoms[a]})
    if not members:
        return report

    keys = [[m.key_off(w) for w in range(nodes)] for m in members]

    # testigo: para N(x̄) ≤ c_i a hay w fuera de las demás coordenadas y L ≡_w N en H con L(x̄[i→w]) = a
    present: Dict[Tuple[int, object], Dict[NodeTuple, int]] = {}
    for idx, m in enumerate(members):
        for w in range(nodes):
            slot = present.setdefault((w, keys[idx][w]), {})
            for t, a in m.network.items():
                if w in t:
                    slot[t] = slot.get(t, 0) | (1 << a)
    for idx, m in enumerate(members):
        for t, a in m.network.items():
            for i in range(n):
                others = {t[k] for k in range(n) if k != i}
                available = 0
                for w in range(nodes):
                    if w not in others:
                        available |= present[(w, keys[idx][w])].get(t[:i] + (w,) + t[i + 1:], 0)
                missing = S.cylindrify(i, 1 << a) & ~available
                if missing:
                    report.fail("hiperbase.testigo", {"miembro": idx, "tupla": list(t), "i": i},
                                lhs=[S.atoms[b] for b in bits(missing)])

    # amalgamación: M ≡_xy N implica L con M ≡_x L ≡_y N
    for x in range(nodes):
        for y in range(x + 1, nodes):
            pairs = {(keys[idx][x], keys[idx][y]) for idx in range(len(members))}
            classes: Dict[object, Tuple[Dict[object, int], Dict[object, int]]] = {}
            for idx, m in enumerate(members):
                left, right = classes.setdefault(m.key_off(x, y), ({}, {}))
                left.setdefault(keys[idx][x], idx)
                right.setdefault(keys[idx][y], idx)
            for left, right in classes.values():
                missing = next(((i_m, i_n) for kx, i_m in left.items() for ky, i_n in right.items()
                                if (kx, ky) not in pairs), None)
                if missing:
                    report.fail("hiperbase.amalgama", {"M": missing[0], "N": missing[1], "x": x, "y": y})

    if symmetric:
        frozen = {m.frozen() for m in members}
        for idx, m in enumerate(members):
            sigma = next((s for s in product(range(nodes), repeat=nodes)
                          if m.compose(s).frozen() not in frozen), None)
            if sigma is not None:
                report.fail("hiperbase.simetria", {"miembro": idx, "sigma": list(sigma)})
    log.info("check_hyperbasis: %s", report.summary())
    return report.sort()


def matrix_hypernetwork(f: BasicMatrix, width: Optional[int] = None) -> Hypernetwork:
    """Una matriz básica como hiperred bidimensional sobre ra_as_ca2(S), con |Λ| = 1"""
    labels = tuple(f(x, y) for x in range(f.m) for y in range(f.m))
    return uniform_hypernetwork(Network(2, f.m, labels), width)
