"""
Constructores acotados de representaciones relativizadas:
hipergrafos n-cuadrados a partir de una base y el juego de prerredes para álgebras finitas PTA/TA
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Deque, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .atom_structures import CaAtomStructure, bits, popcount
from .config import Budgets, DEFAULT_BUDGETS, PreconditionError
from .networks import BasisCandidate, Network, check_hyperbasis, validate_network
from .report import CheckReport

log = logging.getLogger(__name__)

Edge = Tuple[int, ...]
FALSIFICATION = "FALSIFICACION"
SIGNATURES = ("PTA", "TA")
ELEMENT_SCAN_LIMIT = 4096


def _replace(t: Edge, i: int, value: int) -> Edge:
    return t[:i] + (value,) + t[i + 1:]


def _swap(t: Edge, i: int, j: int) -> Edge:
    s = list(t)
    s[i], s[j] = s[j], s[i]
    return tuple(s)


# ============================================================================
# Hipergrafo n-cuadrado
# ============================================================================
@dataclass
class PartialHypergraph:
    """Hiperaristas atómicas (m-tuplas -> átomo) y anchas (n-tuplas -> índice de la red de la base)"""
    structure: CaAtomStructure
    basis: List[Network]
    nodes: int = 0
    initial_nodes: int = 0
    processed: int = 0
    atom_edges: Dict[Edge, int] = field(default_factory=dict)
    wide_edges: Dict[Edge, int] = field(default_factory=dict)
    pending: Deque[Tuple[Edge, int, int]] = field(default_factory=deque)
    log: List[Dict[str, object]] = field(default_factory=list)
    conflicts: List[Dict[str, object]] = field(default_factory=list)

    def new_node(self) -> int:
        self.nodes += 1
        return self.nodes - 1

    def to_dict(self) -> Dict[str, object]:
        atoms = self.structure.atoms
        return {
            "nodes": self.nodes,
            "initialNodes": self.initial_nodes,
            "processed": self.processed,
            "atomEdges": [[list(t), atoms[a]] for t, a in sorted(self.atom_edges.items())],
            "wideEdges": [[list(t), k] for t, k in sorted(self.wide_edges.items())],
            "pending": len(self.pending),
            "log": self.log,
            "conflicts": self.conflicts,
        }


def _representatives(wide: Edge) -> List[int]:
    """Primera posición de cada nodo de la hiperarista ancha"""
    seen, positions = set(), []
    for p, x in enumerate(wide):
        if x not in seen:
            seen.add(x)
            positions.append(p)
    return positions


class SquareBuilder:
    """M_0 como unión disjunta de restricciones estrictas y luego reparación FIFO de defectos"""

    def __init__(self, S: CaAtomStructure, basis: Sequence[Network]):
        self.S = S
        self.P = PartialHypergraph(S, list(basis))
        self.keys = [[N.key_off(k) for k in range(N.nodes)] for N in self.P.basis]

    def _label(self, t: Edge, a: int, source: str):
        current = self.P.atom_edges.get(t)
        if current is None:
            self.P.atom_edges[t] = a
        elif current != a:
            self.P.conflicts.append({"tupla": list(t), "actual": self.S.atoms[current],
                                     "nueva": self.S.atoms[a], "origen": source})

    def add_wide(self, wide: Edge, idx: int):
        P = self.P
        if wide in P.wide_edges:
            if P.wide_edges[wide] != idx:
                P.conflicts.append({"ancha": list(wide), "actual": P.wide_edges[wide], "nueva": idx})
            return
        P.wide_edges[wide] = idx
        N = P.basis[idx]
        reps = _representatives(wide)
        for t in product(reps, repeat=self.S.dimension):
            self._label(tuple(wide[p] for p in t), N.label(t), f"red {idx}")
        for k in range(len(wide)):
            for other in range(len(P.basis)):
                if other != idx and self.keys[other][k] == self.keys[idx][k]:
                    P.pending.append((wide, k, other))

    def initial(self):
        """Cada red, cociente por x ∼ y si N(x, y, ..., y) ≤ d_01, sobre nodos nuevos"""
        d01 = self.S.diagonal(0, 1) if self.S.dimension > 1 else 0
        n = self.S.dimension
        for idx, N in enumerate(self.P.basis):
            rep = []
            for x in range(N.nodes):
                rep.append(next(y for y in range(x + 1)
                                if y == x or (n > 1 and d01 >> N.label((y,) + (x,) * (n - 1)) & 1)))
            fresh = {r: self.P.new_node() for r in sorted(set(rep))}
            self.add_wide(tuple(fresh[rep[x]] for x in range(N.nodes)), idx)
        self.P.initial_nodes = self.P.nodes

    def repair(self, steps: int):
        P = self.P
        while P.pending and P.processed < steps:
            wide, k, other = P.pending.popleft()
            pi = P.new_node()
            new_wide = _replace(wide, k, pi)
            P.log.append({"defecto": [list(wide), k, other], "nodo": pi})
            self.add_wide(new_wide, other)
            P.processed += 1


def _square_preconditions(S: CaAtomStructure, basis: Sequence[Network]):
    for idx, N in enumerate(basis):
        report = validate_network(N, S)
        if not report.passed:
            raise PreconditionError(f"La red {idx} de la base no es válida: {report.failed_checks()[0]}")
    report = check_hyperbasis(basis, S)
    for clause in ("hiperbase.cobertura", "hiperbase.testigo", "hiperbase.amalgama"):
        if clause in report.failed_checks():
            raise PreconditionError(f"La base no cumple la cláusula {clause}")


def validate_square_rep(P: PartialHypergraph) -> CheckReport:
    """Cláusulas del hipergrafo sobre las tuplas ya etiquetadas"""
    S = P.structure
    n = S.dimension
    report = CheckReport("hipergrafo")
    variants: Dict[Tuple[int, Edge], List[Tuple[Edge, int]]] = {}
    for t, a in sorted(P.atom_edges.items()):
        if not 0 <= a < S.size:
            report.fail("hiperarista.atomo", {"tupla": list(t)}, lhs=a)
            continue
        for i, j in combinations(range(n), 2):
            if t[i] == t[j] and not S.diagonal(i, j) >> a & 1:
                report.fail("hiperarista.diagonal", {"tupla": list(t), "i": i, "j": j}, lhs=S.atoms[a])
            if S.has_subst():
                swapped = P.atom_edges.get(_swap(t, i, j))
                if swapped is not None and swapped != S.subst_atom(i, j, a):
                    report.fail("hiperarista.sustitucion", {"tupla": list(t), "i": i, "j": j},
                                lhs=S.atoms[swapped], rhs=S.atoms[S.subst_atom(i, j, a)])
        for i in range(n):
            variants.setdefault((i, t[:i] + t[i + 1:]), []).append((t, a))
    for (i, _), group in sorted(variants.items()):
        for (t, a), (u, b) in combinations(group, 2):
            if not S.related(i, a, b):
                report.fail("hiperarista.cilindro", {"tupla": list(t), "variante": list(u), "i": i},
                            lhs=S.atoms[a], rhs=S.atoms[b])
    for conflict in P.conflicts:
        report.fail("hiperarista.unica", conflict)
    for wide, idx in sorted(P.wide_edges.items()):
        N = P.basis[idx]
        for t in product(_representatives(wide), repeat=n):
            if P.atom_edges.get(tuple(wide[p] for p in t)) != N.label(t):
                report.fail("ancha.coherente", {"ancha": list(wide), "red": idx, "posiciones": list(t)})
    if P.nodes != P.initial_nodes + P.processed:
        report.fail("construccion.nodos", {"nodos": P.nodes}, lhs=P.initial_nodes, rhs=P.processed)
    report.stats.update({"nodes": P.nodes, "atomEdges": len(P.atom_edges), "wideEdges": len(P.wide_edges),
                         "processed": P.processed, "pending": len(P.pending)})
    if P.pending:
        report.notes.append(f"Quedan {len(P.pending)} defectos sin procesar")
    return report.sort()


def build_square_rep(S: CaAtomStructure, H: Union[BasisCandidate, Sequence[Network]],
                     steps: int) -> Tuple[PartialHypergraph, CheckReport]:
    """Construye M_0 y procesa a lo sumo steps defectos, uno por nodo nuevo"""
    basis = H.networks() if isinstance(H, BasisCandidate) else list(H)
    _square_preconditions(S, basis)
    builder = SquareBuilder(S, basis)
    builder.initial()
    builder.repair(steps)
    report = validate_square_rep(builder.P)
    log.info("build_square_rep: %d nodos, %d defectos procesados, %d pendientes",
             builder.P.nodes, builder.P.processed, len(builder.P.pending))
    return builder.P, report


# ============================================================================
# Juego de prerredes
# ============================================================================
@dataclass
class PartialRep:
    """Cadena de prerredes: labels es N_t (elementos), atomic su compañera atómica M_t"""
    structure: CaAtomStructure
    signature: str
    nodes: int = 0
    atomic: Dict[Edge, int] = field(default_factory=dict)
    labels: Dict[Edge, int] = field(default_factory=dict)
    edge_order: List[Edge] = field(default_factory=list)
    chain: List[Dict[Edge, int]] = field(default_factory=list)
    moves: List[Dict[str, object]] = field(default_factory=list)
    played: Dict[int, Edge] = field(default_factory=dict)
    status: str = "ok"

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFICATION

    def to_dict(self) -> Dict[str, object]:
        atoms = self.structure.atoms
        return {
            "signature": self.signature,
            "status": self.status,
            "nodes": self.nodes,
            "edges": [{"tupla": list(e), "atomo": atoms[self.atomic[e]],
                       "etiqueta": [atoms[a] for a in bits(self.labels[e])]} for e in self.edge_order],
            "moves": self.moves,
            "played": [[[atoms[a] for a in bits(x)], list(e)] for x, e in sorted(self.played.items())],
        }


def _elements_by_size(k: int) -> Iterator[int]:
    """Elementos no nulos de Cm(S) por tamaño y luego lexicográficamente en los átomos"""
    for size in range(1, k + 1):
        for atoms in combinations(range(k), size):
            mask = 0
            for a in atoms:
                mask |= 1 << a
            yield mask


class PrenetworkGame:
    """∀ juega elemento, dicotomía o cilindrificador; ∃ responde con las redes atómicas PT/T"""

    KINDS = ("elemento", "dicotomia", "cilindro")

    def __init__(self, S: CaAtomStructure, signature: str):
        self.S = S
        self.n = S.dimension
        self.transpositions = signature == "TA"
        self.R = PartialRep(S, signature)
        self._elements: List[int] = []
        self._element_iter = _elements_by_size(S.size)
        self.total = (1 << S.size) - 1
        self.cursors = {kind: 0 for kind in self.KINDS}

    # ------------------------------------------------------------------
    def element(self, idx: int) -> int:
        while len(self._elements) <= idx:
            self._elements.append(next(self._element_iter))
        return self._elements[idx]

    def pattern(self, e: Edge) -> int:
        """Producto de d_ij (si e_i = e_j) y de -d_ij (si no)"""
        S = self.S
        mask = S.full
        for i, j in combinations(range(self.n), 2):
            mask &= S.diagonal(i, j) if e[i] == e[j] else S.full & ~S.diagonal(i, j)
        return mask

    def closure(self, start: Edge, atom: int) -> Optional[Dict[Edge, int]]:
        """Red atómica PT (con transposiciones en TA) generada por start; None si no es atómica o choca"""
        S = self.S
        found = {start: atom}
        queue = deque([start])
        while queue:
            t = queue.popleft()
            b = found[t]
            steps = []
            for i in range(self.n):
                for j in range(self.n):
                    if i != j and t[i] != t[j]:
                        steps.append((_replace(t, i, t[j]), S.t_op(i, j, 1 << b)))
            if self.transpositions:
                for i, j in combinations(range(self.n), 2):
                    if t[i] != t[j]:
                        steps.append((_swap(t, i, j), 1 << S.subst_atom(i, j, b)))
            for u, mask in steps:
                if popcount(mask) != 1:
                    return None
                c = mask.bit_length() - 1
                if u in found:
                    if found[u] != c:
                        return None
                    continue
                found[u] = c
                queue.append(u)
        return found

    def amalgamate(self, closure: Dict[Edge, int]) -> bool:
        R = self.R
        if any(R.atomic.get(e, a) != a for e, a in closure.items()):
            return False
        for e, a in closure.items():
            if e not in R.atomic:
                R.atomic[e] = a
                R.labels[e] = self.pattern(e)
                R.edge_order.append(e)
        return True

    def restrict(self, edge: Edge, mask: int):
        """N(edge) ∩= mask; en TA también sobre las transposiciones con s_[ij]"""
        targets = {edge: mask}
        queue = deque([edge])
        while self.transpositions and queue:
            t = queue.popleft()
            for i, j in combinations(range(self.n), 2):
                u = _swap(t, i, j)
                if u not in targets:
                    targets[u] = self.S.transpose(i, j, targets[t])
                    queue.append(u)
        for e, m in targets.items():
            if e in self.R.labels:
                self.R.labels[e] &= m

    def falsify(self, move: Dict[str, object], reason: str):
        self.R.status = FALSIFICATION
        move["falsificacion"] = reason
        log.warning("Falsificación en %s: %s", move.get("tipo"), reason)

    # ------------------------------------------------------------------
    def play_element(self, a: int, move: Dict[str, object]):
        S, R = self.S, self.R
        low = (a & -a).bit_length() - 1
        x: List[int] = []
        for i in range(self.n):
            j = next((j for j in range(i) if S.diagonal(i, j) >> low & 1), None)
            if j is None:
                R.nodes += 1
                x.append(R.nodes - 1)
            else:
                x.append(x[j])
        edge = tuple(x)
        closure = self.closure(edge, low)
        if closure is None or not self.amalgamate(closure):
            self.falsify(move, "la red PT del átomo no es atómica o choca")
            return
        self.restrict(edge, a)
        R.played.setdefault(a, edge)
        move["arista"] = list(edge)

    def play_dichotomy(self, edge: Edge, a: int, move: Dict[str, object]):
        choice = a if a >> self.R.atomic[edge] & 1 else self.S.full & ~a
        self.restrict(edge, choice)
        move["eleccion"] = choice

    def play_cylinder(self, edge: Edge, i: int, b: int, move: Dict[str, object]):
        S, R = self.S, self.R
        for z in range(R.nodes):
            t = _replace(edge, i, z)
            if t in R.atomic and b >> R.atomic[t] & 1:
                self.restrict(t, b)
                move["testigo"] = list(t)
                return
        am = R.atomic[edge]
        for c in bits(b):
            if not S.related(i, c, am):
                continue
            same = {edge[k] for k in range(self.n) if k != i and S.diagonal(i, k) >> c & 1}
            if len(same) > 1:
                continue
            z = same.pop() if same else R.nodes
            t = _replace(edge, i, z)
            closure = self.closure(t, c)
            if closure is None or any(R.atomic.get(e, a) != a for e, a in closure.items()):
                continue
            if z == R.nodes:
                R.nodes += 1
            self.amalgamate(closure)
            self.restrict(t, b)
            move["testigo"] = list(t)
            return
        self.falsify(move, "ningún átomo de b admite un testigo")

    # ------------------------------------------------------------------
    def _next_element(self):
        idx = self.cursors["elemento"]
        self.cursors["elemento"] += 1
        return ("elemento", self.element(idx % self.total))

    def _next_dichotomy(self):
        edges = self.R.edge_order
        if not edges:
            return None
        idx = self.cursors["dicotomia"]
        self.cursors["dicotomia"] += 1
        return ("dicotomia", edges[idx % len(edges)], self.element((idx // len(edges)) % self.total))

    def _legal_element(self, edge: Edge, i: int, q: int) -> Optional[int]:
        """El q-ésimo b con N(edge) ≤ c_i b"""
        need = self.R.labels[edge]
        count = 0
        for idx in range(min(self.total, ELEMENT_SCAN_LIMIT)):
            b = self.element(idx)
            if need & ~self.S.cylindrify(i, b) == 0:
                if count == q:
                    return b
                count += 1
        return None

    def _next_cylinder(self):
        edges = self.R.edge_order
        pairs = len(edges) * self.n
        for _ in range(pairs):
            idx = self.cursors["cilindro"]
            self.cursors["cilindro"] += 1
            p, q = idx % pairs, idx // pairs
            edge, i = edges[p // self.n], p % self.n
            b = self._legal_element(edge, i, q)
            if b is not None:
                return ("cilindro", edge, i, b)
        return None

    def next_fair_move(self, round_no: int):
        """Turno rotativo entre los tres tipos; si un tipo no tiene jugada legal pasa al siguiente"""
        pickers = (self._next_element, self._next_dichotomy, self._next_cylinder)
        for shift in range(3):
            move = pickers[(round_no + shift) % 3]()
            if move is not None:
                return move
        return None

    def legal(self, move) -> bool:
        kind = move[0]
        if kind == "elemento":
            return 0 < move[1] <= self.S.full
        if kind == "dicotomia":
            return move[1] in self.R.labels
        if kind == "cilindro":
            _, edge, i, b = move
            return edge in self.R.labels and self.R.labels[edge] & ~self.S.cylindrify(i, b) == 0
        return False

    def play(self, move, round_no: int):
        entry: Dict[str, object] = {"ronda": round_no, "tipo": move[0]}
        if move[0] == "elemento":
            entry["elemento"] = move[1]
            self.play_element(move[1], entry)
        elif move[0] == "dicotomia":
            entry.update({"arista": list(move[1]), "elemento": move[2]})
            self.play_dichotomy(move[1], move[2], entry)
        else:
            entry.update({"arista": list(move[1]), "i": move[2], "elemento": move[3]})
            self.play_cylinder(move[1], move[2], move[3], entry)
        self.R.moves.append(entry)
        self.R.chain.append(dict(self.R.labels))


def _check_rep_game(game: PrenetworkGame) -> CheckReport:
    S, R = game.S, game.R
    n = S.dimension
    report = CheckReport("juego_prerredes")
    for move in R.moves:
        if "falsificacion" in move:
            report.fail("juego.falsificacion", {"ronda": move["ronda"], "tipo": move["tipo"]},
                        message=str(move["falsificacion"]))
    for a, edge in sorted(R.played.items()):
        if R.labels[edge] & ~a:
            report.fail("juego.elemento", {"elemento": a, "arista": list(edge)})
    for move in R.moves:
        if move.get("ilegal"):
            report.notes.append(f"Jugada ilegal ignorada en la ronda {move['ronda']}: {move['tipo']}")
            continue
        if "falsificacion" in move or move["tipo"] == "elemento":
            continue
        if move["tipo"] == "dicotomia":
            label, a = R.labels[tuple(move["arista"])], move["elemento"]
            if label & ~a and label & a:
                report.fail("juego.dicotomia", {"ronda": move["ronda"], "arista": move["arista"]})
        else:
            witness = move.get("testigo")
            if witness is None or R.labels[tuple(witness)] & ~move["elemento"]:
                report.fail("juego.cilindro", {"ronda": move["ronda"], "arista": move["arista"]})

    for t, snapshot in enumerate(R.chain):
        for e, label in snapshot.items():
            if label != label & game.pattern(e) or label == 0:
                report.fail("juego.red", {"ronda": t, "arista": list(e)}, lhs=label)
        if t > 0:
            previous = R.chain[t - 1]
            for e, label in previous.items():
                if e not in snapshot or snapshot[e] & ~label:
                    report.fail("juego.cadena", {"ronda": t, "arista": list(e)})
    for e, label in R.labels.items():
        if not label >> R.atomic[e] & 1:
            report.fail("juego.red", {"arista": list(e)}, message="La red atómica no está por debajo de la prerred")
        if game.transpositions:
            for i, j in combinations(range(n), 2):
                u = _swap(e, i, j)
                if u in R.labels and R.labels[u] != S.transpose(i, j, label):
                    report.fail("juego.red", {"arista": list(e), "i": i, "j": j},
                                message="Falla la cláusula de transposición")
    report.stats.update({"rounds": len(R.moves), "nodes": R.nodes, "edges": len(R.labels),
                         "played": len(R.played)})
    for kind in PrenetworkGame.KINDS:
        report.stats[kind] = sum(1 for m in R.moves if m["tipo"] == kind)
    return report.sort()


def build_prenetwork_rep(S: CaAtomStructure, rounds: int, schedule: Optional[Sequence[tuple]] = None,
                         signature: Optional[str] = None,
                         budgets: Budgets = DEFAULT_BUDGETS) -> Tuple[PartialRep, CheckReport]:
    """
    Juega rounds rondas del juego de prerredes sobre Cm(S). Sin schedule, ∀ sigue el turno rotativo
    justo; con schedule juega esas jugadas en orden. Una falla de la estrategia de ∃ se informa como
    FALSIFICACION, nunca se descarta.
    """
    signature = signature or ("TA" if S.has_subst() else "PTA")
    if signature not in SIGNATURES:
        raise PreconditionError(f"Signatura desconocida: {signature!r}")
    if signature == "TA" and not S.has_subst():
        raise PreconditionError("La signatura TA requiere sustituciones")
    budgets.check("max_atoms", S.size)
    game = PrenetworkGame(S, signature)
    if schedule is not None:
        for round_no, move in enumerate(list(schedule)[:rounds]):
            if not game.legal(move):
                game.R.moves.append({"ronda": round_no, "tipo": move[0], "ilegal": True})
                game.R.chain.append(dict(game.R.labels))
                continue
            game.play(move, round_no)
            if game.R.falsified:
                break
    else:
        for round_no in range(rounds):
            move = game.next_fair_move(round_no)
            if move is None:
                break
            game.play(move, round_no)
            if game.R.falsified:
                break
    report = _check_rep_game(game)
    log.info("build_prenetwork_rep: %d rondas, %d aristas, estado %s", len(game.R.moves), len(game.R.labels),
             game.R.status)
    return game.R, report


def validate_rep(R: PartialRep, queries: Sequence[int] = ()) -> CheckReport:
    """
    h(a) = aristas con etiqueta final ≤ a. Comprueba h(0) = ∅, las diagonales, uniones e intersecciones
    donde las aristas deciden, los cilindrificadores jugados y la inyectividad sobre lo jugado.
    """
    S = R.structure
    n = S.dimension
    report = CheckReport("representacion")
    labels = R.labels

    def h(a: int):
        return frozenset(e for e, m in labels.items() if m & ~a == 0)

    def decides(m: int, a: int) -> bool:
        return m & ~a == 0 or m & a == 0

    if h(0):
        report.fail("rep.cero", {"aristas": len(h(0))})
    for e, m in sorted(labels.items()):
        for i, j in combinations(range(n), 2):
            if (e[i] == e[j]) != (m & ~S.diagonal(i, j) == 0):
                report.fail("rep.diagonal", {"arista": list(e), "i": i, "j": j})

    played = sorted(R.played)
    images = {a: h(a) for a in [0] + played}
    for a, b in combinations(played, 2):
        join, meet = h(a | b), h(a & b)
        for e, m in labels.items():
            if not (decides(m, a) and decides(m, b)):
                continue
            if (e in join) != (e in images[a] or e in images[b]):
                report.fail("rep.union", {"a": a, "b": b, "arista": list(e)})
            if (e in meet) != (e in images[a] and e in images[b]):
                report.fail("rep.interseccion", {"a": a, "b": b, "arista": list(e)})
    for move in R.moves:
        if move.get("tipo") != "cilindro" or "testigo" not in move:
            continue
        edge, witness = tuple(move["arista"]), tuple(move["testigo"])
        b, i = move["elemento"], move["i"]
        if edge not in h(S.cylindrify(i, b)) or witness not in h(b):
            report.fail("rep.cilindro", {"ronda": move["ronda"], "arista": list(edge)})
    for a, b in combinations(sorted(images), 2):
        if images[a] == images[b]:
            report.fail("rep.inyectiva", {"a": a, "b": b})
    for q in queries:
        if q not in images:
            report.notes.append(f"Elemento {q} no cubierto: no se jugó")
    report.stats.update({"edges": len(labels), "played": len(played)})
    return report.sort()
