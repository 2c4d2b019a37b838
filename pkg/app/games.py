"""
Resolución exacta de juegos finitos por inducción hacia atrás con tabla de memoria:
juego de guijarros EF, juego atómico de redes cilíndricas y juego de triángulos sobre redes RA
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from .atom_structures import CaAtomStructure, RaAtomStructure, StructureError
from .config import Budgets, DEFAULT_BUDGETS
from .constructions import BasicMatrix, enumerate_basic_matrices
from .networks import Network, extend_network, networks_with_label
from .pebble_structures import PebbleStructure
from .report import CheckReport

log = logging.getLogger(__name__)

EXISTS = "Exists"
FORALL = "Forall"
EF_MODES = ("forth", "backAndForth")
RULE_SETS = ("EF", "CaAtomic", "RaTriangle")


@dataclass(frozen=True)
class GameSpec:
    """Parámetros de una partida; la arena (estructuras) se pasa aparte"""
    rule_set: str
    rounds: int
    pebbles: Optional[int] = None
    node_cap: Optional[int] = None
    reuse: bool = True
    mode: str = "forth"

    def __post_init__(self):
        if self.rule_set not in RULE_SETS:
            raise ValueError(f"Juego desconocido: {self.rule_set!r}")
        if self.rounds < 0:
            raise ValueError("El número de rondas debe ser no negativo")
        if self.rule_set == "EF" and (self.pebbles is None or self.pebbles < 1):
            raise ValueError("El juego EF necesita al menos un par de guijarros")
        if self.rule_set != "EF" and self.node_cap is None:
            raise ValueError("Los juegos de redes necesitan un tope de nodos")


# ============================================================================
# Arenas
# ============================================================================
class Arena:
    """Posiciones canónicas; ∀ elige una jugada y ∃ una respuesta (lista vacía: ∃ pierde)"""

    def initial(self) -> Hashable:
        raise NotImplementedError

    def forall_moves(self, state) -> List[Hashable]:
        raise NotImplementedError

    def replies(self, state, move) -> List[Hashable]:
        raise NotImplementedError

    def describe(self, item) -> Any:
        return item


class EfArena(Arena):
    """Estado: pares (a, b) colocados, ordenados; los guijarros son intercambiables"""

    def __init__(self, A: PebbleStructure, B: PebbleStructure, pebbles: int, mode: str = "forth"):
        if mode not in EF_MODES:
            raise ValueError(f"Modo EF desconocido: {mode!r}")
        self.A, self.B, self.pebbles, self.mode = A, B, pebbles, mode
        self.names = sorted(set(A.relations) | set(B.relations))
        self.arity = {**B.arities(), **A.arities()}

    def initial(self):
        return ()

    def forall_moves(self, state):
        lifts: List[Optional[Tuple[int, int]]] = [None] if len(state) < self.pebbles else []
        lifts += sorted(set(state))
        sides = ("A",) if self.mode == "forth" else ("A", "B")
        moves = []
        for lift in lifts:
            for side in sides:
                universe = self.A.universe if side == "A" else self.B.universe
                moves.extend((lift, side, x) for x in universe)
        return moves

    def replies(self, state, move):
        lift, side, x = move
        base = list(state)
        if lift is not None:
            base.remove(lift)
        other = self.B.universe if side == "A" else self.A.universe
        found = set()
        for y in other:
            pair = (x, y) if side == "A" else (y, x)
            placed = tuple(sorted(base + [pair]))
            if self.partial_isomorphism(placed):
                found.add(placed)
        return sorted(found)

    def partial_isomorphism(self, pairs: Sequence[Tuple[int, int]]) -> bool:
        """Los pares colocados definen una biyección parcial que preserva cada relación"""
        for (a, b) in pairs:
            for (a2, b2) in pairs:
                if (a == a2) != (b == b2):
                    return False
        for name in self.names:
            rel_a = self.A.relations.get(name, frozenset())
            rel_b = self.B.relations.get(name, frozenset())
            for chosen in product(pairs, repeat=self.arity[name]):
                if (tuple(p[0] for p in chosen) in rel_a) != (tuple(p[1] for p in chosen) in rel_b):
                    return False
        return True

    def describe(self, item):
        if isinstance(item, tuple) and len(item) == 3 and item[1] in ("A", "B"):
            lift, side, x = item
            return {"levanta": list(lift) if lift else None, "lado": side, "elemento": x}
        return [list(p) for p in item]


class CaArena(Arena):
    """
    Ronda 0: ∀ juega un átomo y ∃ una red sobre tantos nodos como la dimensión que lo realiza.
    Después: si la red está en el tope y reuse, ∀ borra un nodo; luego pide (x̄, i, a) con N(x̄) ≤ c_i a
    y ∃ responde con un testigo existente o, bajo el tope, con un nodo nuevo.
    Borrado y pedido forman una sola jugada (z, x̄, i, a) y cuentan como una ronda.
    """

    def __init__(self, S: CaAtomStructure, node_cap: int, reuse: bool = True):
        if node_cap < S.dimension:
            raise StructureError(f"El tope de nodos debe ser al menos la dimensión {S.dimension}")
        self.S, self.node_cap, self.reuse = S, node_cap, reuse
        self._candidates = [[tuple(a for a in range(S.size) if S.related(i, a, b)) for b in range(S.size)]
                            for i in range(S.dimension)]

    def initial(self):
        return None

    def forall_moves(self, state: Optional[Network]):
        if state is None:
            return [("atomo", a) for a in range(self.S.size)]
        deletions: Sequence[Optional[int]] = [None]
        if state.nodes == self.node_cap and self.reuse:
            deletions = range(state.nodes)
        moves = []
        for z in deletions:
            M = state if z is None else state.delete_node(z)
            for t, label in M.items():
                for i in range(self.S.dimension):
                    moves.extend((z, t, i, a) for a in self._candidates[i][label])
        return moves

    def replies(self, state: Optional[Network], move):
        S = self.S
        if state is None:
            base = tuple(range(S.dimension))
            found = {N.canonical() for N in networks_with_label(S, S.dimension, base, move[1])}
            return sorted(found, key=_network_key)
        z, t, i, a = move
        M = state if z is None else state.delete_node(z)
        found = set()
        if any(M.label(t[:i] + (w,) + t[i + 1:]) == a for w in range(M.nodes)):
            found.add(M.canonical())
        if M.nodes < self.node_cap:
            target = t[:i] + (M.nodes,) + t[i + 1:]
            found.update(E.canonical() for E in extend_network(S, M, {target: a}))
        return sorted(found, key=_network_key)

    def describe(self, item):
        if isinstance(item, Network):
            return item.to_dict()
        if item and item[0] == "atomo":
            return {"atomo": self.S.atoms[item[1]]}
        z, t, i, a = item
        return {"borra": z, "tupla": list(t), "i": i, "atomo": self.S.atoms[a]}


def _network_key(N: Network):
    return N.nodes, N.labels


def delete_matrix_node(f: BasicMatrix, z: int) -> BasicMatrix:
    keep = [v for v in range(f.m) if v != z]
    return BasicMatrix(f.m - 1, tuple(tuple(f(u, v) for v in keep) for u in keep))


def canonical_matrix(f: BasicMatrix) -> BasicMatrix:
    """Mínimo lexicográfico sobre los renombramientos de nodos"""
    return min((f.compose_map(perm) for perm in permutations(range(f.m))), key=lambda g: g.entries)


def extend_matrix(S: RaAtomStructure, f: BasicMatrix,
                  required: Optional[Dict[Tuple[int, int], int]] = None) -> Iterator[BasicMatrix]:
    """Extensiones de la red RA f con un nodo nuevo (el último) y etiquetas exigidas opcionales"""
    k = f.m
    F = [list(row) + [-1] for row in f.entries] + [[-1] * (k + 1)]
    want: Dict[int, int] = {}
    for (u, v), a in (required or {}).items():
        if v == k and u != k:
            want[u] = a
        elif u == k and v != k:
            want[v] = S.converse[a]

    def triangles_ok(limit: int) -> bool:
        domain = list(range(limit)) + [k]
        for u in domain:
            for v in domain:
                for w in domain:
                    if k in (u, v, w) and not S.is_consistent(F[u][v], F[u][w], F[w][v]):
                        return False
        return True

    def fill(u: int) -> Iterator[BasicMatrix]:
        if u == k:
            yield BasicMatrix(k + 1, tuple(tuple(row) for row in F))
            return
        options = [want[u]] if u in want else range(S.size)
        for a in options:
            F[u][k], F[k][u] = a, S.converse[a]
            if triangles_ok(u + 1):
                yield from fill(u + 1)
        F[u][k] = F[k][u] = -1

    for e in sorted(S.identity):
        F[k][k] = e
        if S.is_consistent(e, e, e):
            yield from fill(0)
    F[k][k] = -1


class RaArena(Arena):
    """Como CaArena pero sobre redes RA y con jugadas de triángulo (x, y, b, c) con N(x, y) ≤ b;c"""

    def __init__(self, S: RaAtomStructure, node_cap: int, budgets: Budgets = DEFAULT_BUDGETS):
        if node_cap < 2:
            raise StructureError("El tope de nodos debe ser al menos 2")
        self.S, self.node_cap = S, node_cap
        self._pairs = enumerate_basic_matrices(S, 2, budgets)
        self._demands = [[(b, c) for b in range(S.size) for c in range(S.size) if S.is_consistent(a, b, c)]
                         for a in range(S.size)]

    def initial(self):
        return None

    def forall_moves(self, state: Optional[BasicMatrix]):
        if state is None:
            return [("atomo", a) for a in range(self.S.size)]
        deletions: Sequence[Optional[int]] = range(state.m) if state.m == self.node_cap else [None]
        moves = []
        for z in deletions:
            g = state if z is None else delete_matrix_node(state, z)
            for x in range(g.m):
                for y in range(g.m):
                    moves.extend((z, x, y, b, c) for b, c in self._demands[g(x, y)])
        return moves

    def replies(self, state: Optional[BasicMatrix], move):
        if state is None:
            found = {canonical_matrix(f) for f in self._pairs if f(0, 1) == move[1]}
            return sorted(found, key=lambda g: g.entries)
        z, x, y, b, c = move
        g = state if z is None else delete_matrix_node(state, z)
        found = set()
        if any(g(x, w) == b and g(w, y) == c for w in range(g.m)):
            found.add(canonical_matrix(g))
        if g.m < self.node_cap:
            found.update(canonical_matrix(h) for h in extend_matrix(self.S, g, {(x, g.m): b, (g.m, y): c}))
        return sorted(found, key=lambda h: (h.m, h.entries))

    def describe(self, item):
        if isinstance(item, BasicMatrix):
            return [[self.S.atoms[a] for a in row] for row in item.entries]
        if item and item[0] == "atomo":
            return {"atomo": self.S.atoms[item[1]]}
        z, x, y, b, c = item
        return {"borra": z, "x": x, "y": y, "b": self.S.atoms[b], "c": self.S.atoms[c]}


# ============================================================================
# Resolvedor
# ============================================================================
@dataclass
class GameOutcome:
    winner: str
    rounds: int
    states_explored: int
    trace: List[Dict[str, Any]] = field(default_factory=list)
    arena: Optional[Arena] = field(default=None, repr=False, compare=False)
    forall_strategy: Dict[Tuple[Hashable, int], Hashable] = field(default_factory=dict, repr=False, compare=False)
    exists_strategy: Dict[Tuple[Hashable, int, Hashable], Hashable] = field(default_factory=dict, repr=False,
                                                                              compare=False)

    @property
    def strategy(self) -> Dict[tuple, Hashable]:
        return self.exists_strategy if self.winner == EXISTS else self.forall_strategy

    def to_dict(self, include_strategy: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "winner": self.winner,
            "rounds": self.rounds,
            "statesExplored": self.states_explored,
            "trace": self.trace,
        }
        if include_strategy and self.arena is not None:
            describe = self.arena.describe
            if self.winner == EXISTS:
                entries = [{"estado": describe(s) if s is not None else None, "rondas": r,
                            "jugada": describe(mv), "respuesta": describe(reply)}
                           for (s, r, mv), reply in self.exists_strategy.items()]
            else:
                entries = [{"estado": describe(s) if s is not None else None, "rondas": r,
                            "jugada": describe(mv)}
                           for (s, r), mv in self.forall_strategy.items()]
            data["strategy"] = entries
        return data


class GameSolver:
    """Valor de cada (posición canónica, rondas restantes) para ∃, memorizado"""

    def __init__(self, arena: Arena, budgets: Budgets = DEFAULT_BUDGETS):
        self.arena = arena
        self.budgets = budgets
        self._table: Dict[Tuple[Hashable, int], bool] = {}
        self.forall_strategy: Dict[Tuple[Hashable, int], Hashable] = {}
        self.exists_strategy: Dict[Tuple[Hashable, int, Hashable], Hashable] = {}

    def exists_wins(self, state, rounds: int) -> bool:
        if rounds == 0:
            return True
        key = (state, rounds)
        if key in self._table:
            return self._table[key]
        self.budgets.check("max_states", len(self._table) + 1)
        result = True
        for move in self.arena.forall_moves(state):
            reply = next((nxt for nxt in self.arena.replies(state, move) if self.exists_wins(nxt, rounds - 1)),
                         None)
            if reply is None:
                self.forall_strategy[key] = move
                result = False
                break
            self.exists_strategy[(state, rounds, move)] = reply
        self._table[key] = result
        if len(self._table) % 10_000 == 0:
            log.debug("GameSolver: %d estados", len(self._table))
        return result

    def solve(self, rounds: int) -> GameOutcome:
        start = self.arena.initial()
        winner = EXISTS if self.exists_wins(start, rounds) else FORALL
        outcome = GameOutcome(winner, rounds, len(self._table), arena=self.arena,
                              forall_strategy=self.forall_strategy, exists_strategy=self.exists_strategy)
        outcome.trace = self._trace(start, rounds, winner)
        log.info("Juego resuelto en %d rondas: gana %s (%d estados)", rounds, winner, len(self._table))
        return outcome

    def _trace(self, state, rounds: int, winner: str) -> List[Dict[str, Any]]:
        """Una partida óptima: ∀ sigue su estrategia si gana; si no, ∃ responde a la primera jugada"""
        describe = self.arena.describe
        steps = []
        for r in range(rounds, 0, -1):
            if winner == FORALL:
                move = self.forall_strategy.get((state, r))
                if move is None:
                    break
                replies = self.arena.replies(state, move)
                reply = replies[0] if replies else None
            else:
                moves = self.arena.forall_moves(state)
                if not moves:
                    break
                move = moves[0]
                reply = self.exists_strategy[(state, r, move)]
            steps.append({"ronda": rounds - r, "forall": describe(move),
                          "exists": describe(reply) if reply is not None else None})
            if reply is None:
                break
            state = reply
        return steps


def solve_ef(A: PebbleStructure, B: PebbleStructure, p: int, r: int, mode: str = "forth",
             budgets: Budgets = DEFAULT_BUDGETS) -> GameOutcome:
    """EF_r^p[A, B]: en modo forth ∀ sólo coloca guijarros en A"""
    GameSpec("EF", r, pebbles=p, mode=mode)
    return GameSolver(EfArena(A, B, p, mode), budgets).solve(r)


def solve_ca_game(S: CaAtomStructure, n: int, r: int, reuse: bool = True,
                  budgets: Budgets = DEFAULT_BUDGETS) -> GameOutcome:
    """Juego atómico de r rondas (contando la ronda 0) sobre redes de a lo sumo n nodos"""
    GameSpec("CaAtomic", r, node_cap=n, reuse=reuse)
    return GameSolver(CaArena(S, n, reuse), budgets).solve(r)


def solve_ra_game(S: RaAtomStructure, node_cap: int, rounds: int,
                  budgets: Budgets = DEFAULT_BUDGETS) -> GameOutcome:
    GameSpec("RaTriangle", rounds, node_cap=node_cap)
    return GameSolver(RaArena(S, node_cap, budgets), budgets).solve(rounds)


def solve_game(spec: GameSpec, *structures, budgets: Budgets = DEFAULT_BUDGETS) -> GameOutcome:
    """Despacho según spec.rule_set: EF recibe (A, B); los juegos de redes una estructura"""
    if spec.rule_set == "EF":
        A, B = structures
        return solve_ef(A, B, spec.pebbles, spec.rounds, spec.mode, budgets)
    (S,) = structures
    if spec.rule_set == "CaAtomic":
        return solve_ca_game(S, spec.node_cap, spec.rounds, spec.reuse, budgets)
    return solve_ra_game(S, spec.node_cap, spec.rounds, budgets)


# ============================================================================
# Reproducción y monotonía
# ============================================================================
def replay_strategy(outcome: GameOutcome) -> CheckReport:
    """
    Juega la estrategia del ganador contra todas las jugadas del rival hasta agotar las rondas.
    Falla si el ganador declarado llega a una posición perdida.
    """
    report = CheckReport("repeticion")
    arena = outcome.arena
    seen = set()

    def rec(state, r: int):
        if (state, r) in seen:
            return
        seen.add((state, r))
        report.count("positions")
        if r == 0:
            if outcome.winner == FORALL:
                report.fail("repeticion.sobrevive", {"estado": str(arena.describe(state))})
            return
        if outcome.winner == EXISTS:
            for move in arena.forall_moves(state):
                reply = outcome.exists_strategy.get((state, r, move))
                if reply is None or reply not in arena.replies(state, move):
                    report.fail("repeticion.sin_respuesta", {"jugada": str(arena.describe(move)), "rondas": r})
                    return
                rec(reply, r - 1)
        else:
            move = outcome.forall_strategy.get((state, r))
            if move is None:
                report.fail("repeticion.sin_jugada", {"rondas": r})
                return
            for reply in arena.replies(state, move):
                rec(reply, r - 1)

    rec(arena.initial(), outcome.rounds)
    return report.sort()


def check_round_monotonicity(outcomes: Dict[int, GameOutcome]) -> CheckReport:
    """Si ∃ gana con r+1 rondas también gana con r"""
    report = CheckReport("monotonia_rondas")
    rounds = sorted(outcomes)
    for r, r2 in zip(rounds, rounds[1:]):
        if outcomes[r2].winner == EXISTS and outcomes[r].winner == FORALL:
            report.fail("monotonia.rondas", {"r": r, "r_siguiente": r2})
    return report


def check_pebble_monotonicity(outcomes: Dict[int, GameOutcome]) -> CheckReport:
    """Si ∀ gana con p pares de guijarros también gana con p+1"""
    report = CheckReport("monotonia_guijarros")
    pebbles = sorted(outcomes)
    for p, p2 in zip(pebbles, pebbles[1:]):
        if outcomes[p].winner == FORALL and outcomes[p2].winner == EXISTS:
            report.fail("monotonia.guijarros", {"p": p, "p_siguiente": p2})
    return report
