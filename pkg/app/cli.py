"""
Interfaz de línea de comandos del banco de álgebras

Cada ejecución escribe un único JSON con el eco del manifiesto. Códigos de salida:
0 éxito, 1 verificación fallida o FALSIFICACION, 2 uso o formato, 3 presupuesto agotado.
"""
import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .atom_structures import Flavor, RaAtomStructure, StructureError, ra_as_ca2
from .axioms import AxiomVariant, check_ca_atomstructure, check_ca_axioms, check_ra_atomstructure
from .bases import basis_fixpoint, cylindric_basis_check, relational_basis_fixpoint
from .blur import BlurInstance, blur_check
from .config import BudgetExceeded, Budgets, DEFAULT_BUDGETS, PreconditionError
from .constructions import (basic_matrices, bin_ra, compute_psi, enumerate_basic_matrices, eta_pea,
                            flexible_ra, function_structure, monk_ra, monochromatic_ra, rainbow_ra)
from .coloured_graphs import validate_coloured_graph
from .dot_export import coloured_graph_to_dot, graph_to_dot, render
from .games import (EXISTS, FORALL, GameSpec, check_pebble_monotonicity, check_round_monotonicity,
                    replay_strategy, solve_ef, solve_game)
from .graphs import INFINITY, Graph, chromatic_number, clique_lower_bound, find_k_colouring, girth, \
    graph_gen, greedy_upper_bound
from .networks import network_from_matrix
from .parser import ParseError
from .pebble_structures import PebbleStructure, pebble_structure
from .relativizer import build_prenetwork_rep, build_square_rep, validate_rep
from .report import CheckReport, export_report_pdf, merge_reports
from .semantic_analyzer import SemanticError
from .tokens import LexError
from .serialization import (SerializationError, coloured_graph_from_dict, graph_to_dict, graph_to_text,
                            load_graph, pebble_from_dict, read_json, structure_from_dict, structure_to_dict,
                            write_json)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

USAGE_ERRORS = (SerializationError, StructureError, PreconditionError, ValueError, KeyError,
                LexError, ParseError, SemanticError)


@dataclass
class RunManifest:
    """Todo lo que determina una ejecución; volver a correrlo reproduce el mismo informe"""
    subcommand: str
    params: Dict[str, Any] = field(default_factory=dict)
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    seed: int = 0
    budgets: Dict[str, Any] = field(default_factory=dict)
    jobs: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def effective_budgets(self) -> Budgets:
        return DEFAULT_BUDGETS.with_overrides(seed=self.seed, **self.budgets)


@dataclass
class RunResult:
    status: int
    result: Dict[str, Any]
    reports: List[CheckReport] = field(default_factory=list)


# ============================================================================
# Utilidades
# ============================================================================
def parse_graph_spec(text: str, seed: int = 0) -> Graph:
    """ "cycle:5", "disjointCliques:3,3", "erdosSample:10,0.3" (la semilla es la del manifiesto)"""
    kind, _, raw = text.partition(":")
    params: List[Any] = []
    for part in filter(None, raw.split(",")):
        params.append(float(part) if "." in part else int(part))
    if kind == "erdosSample":
        params = params[:2] + [seed]
    return graph_gen(kind, *params)


def _pebble(data: Any) -> PebbleStructure:
    if isinstance(data, dict) and "kind" in data:
        return pebble_structure(data["kind"], *data.get("params", []))
    return pebble_from_dict(data)


def _structure_input(manifest: RunManifest) -> Any:
    if not manifest.inputs:
        raise ValueError("Se requiere --input con una estructura de átomos")
    return structure_from_dict(read_json(manifest.inputs[0]))


def _result_of(reports: Sequence[CheckReport], **extra: Any) -> RunResult:
    passed = all(r.passed for r in reports)
    result = {"passed": passed, "reports": [r.to_dict() for r in reports]}
    result.update(extra)
    return RunResult(EXIT_OK if passed else EXIT_FAILED, result, list(reports))


# ============================================================================
# Subcomandos
# ============================================================================
CONSTRUCTORS: Dict[str, Callable[[Dict[str, Any], Budgets], Any]] = {
    "monk": lambda p, b: monk_ra(parse_graph_spec(p["graph"], b.seed), p.get("n", 3), b),
    "eta": lambda p, b: eta_pea(parse_graph_spec(p["graph"], b.seed), p.get("n", 3), b),
    "bin": lambda p, b: bin_ra(p.get("n", 3), p.get("r", 1), p.get("s"), b),
    "rainbow": lambda p, b: rainbow_ra(p.get("greens", 3), p.get("reds", 2)),
    "flexible": lambda p, b: flexible_ra(p.get("k", 3)),
    "monochromatic": lambda p, b: monochromatic_ra(p.get("k", 3)),
    "functions": lambda p, b: function_structure(p.get("n", 3), p.get("k", 2), b),
}


def cmd_construct(manifest: RunManifest) -> RunResult:
    p = manifest.params
    budgets = manifest.effective_budgets()
    if p["kind"] == "matrices":
        source = _structure_input(manifest)
        S = basic_matrices(source, p.get("m", 3), budgets)
    else:
        S = CONSTRUCTORS[p["kind"]](p, budgets)
    return RunResult(EXIT_OK, {"structure": structure_to_dict(S), "atoms": S.size})


def cmd_check(manifest: RunManifest) -> RunResult:
    S = _structure_input(manifest)
    budgets = manifest.effective_budgets()
    full = manifest.params.get("full_powerset", False)
    axioms = manifest.params.get("axioms", "auto")
    if isinstance(S, RaAtomStructure):
        reports = [check_ra_atomstructure(S)]
        if axioms != "auto":
            reports.append(check_ca_axioms(ra_as_ca2(S), AxiomVariant(axioms), full, budgets))
        return _result_of(reports)
    reports = [check_ca_atomstructure(S)]
    if axioms == "auto":
        axioms = {Flavor.PEA: "PEA", Flavor.TA: "TA", Flavor.PTA: "PTA"}.get(S.flavor, "CA")
    if S.flavor != Flavor.DF:
        reports.append(check_ca_axioms(S, AxiomVariant(axioms), full, budgets))
    return _result_of(reports)


def game_spec_from_dict(data: Dict[str, Any]) -> Tuple[GameSpec, List[Any]]:
    """{"ruleSet", "rounds", "pebbles", "nodeCap", "reuse", "mode", "structures": [...]}"""
    spec = GameSpec(data["ruleSet"], data["rounds"], data.get("pebbles"), data.get("nodeCap"),
                    data.get("reuse", True), data.get("mode", "forth"))
    raw = data.get("structures", [])
    if spec.rule_set == "EF":
        structures = [_pebble(s) for s in raw]
    else:
        structures = [structure_from_dict(s) for s in raw]
    return spec, structures


def cmd_solve_game(manifest: RunManifest) -> RunResult:
    if not manifest.inputs:
        raise ValueError("Se requiere --input con un GameSpec")
    spec, structures = game_spec_from_dict(read_json(manifest.inputs[0]))
    outcome = solve_game(spec, *structures, budgets=manifest.effective_budgets())
    replay = replay_strategy(outcome)
    result = outcome.to_dict(include_strategy=not manifest.params.get("no_strategy", False))
    result["replay"] = replay.to_dict()
    return RunResult(EXIT_OK if replay.passed else EXIT_FAILED, result, [replay])


def cmd_basis(manifest: RunManifest) -> RunResult:
    S = _structure_input(manifest)
    budgets = manifest.effective_budgets()
    mode, n = manifest.params.get("mode", "fixpoint"), manifest.params.get("n", 3)
    if mode == "cylindric":
        if not isinstance(S, RaAtomStructure):
            raise ValueError("La verificación de base cilíndrica requiere una estructura RA")
        return _result_of([cylindric_basis_check(S, n, budgets)])
    if isinstance(S, RaAtomStructure):
        candidate = relational_basis_fixpoint(S, n, budgets)
    else:
        candidate = basis_fixpoint(S, n, budgets)
    result: Dict[str, Any] = {"exists": candidate is not None}
    if candidate is not None:
        result.update({"size": len(candidate), "stats": candidate.stats})
    return RunResult(EXIT_OK, result)


def cmd_blur_check(manifest: RunManifest) -> RunResult:
    p = manifest.params
    budgets = manifest.effective_budgets()
    if manifest.inputs:
        data = read_json(manifest.inputs[0])
        if "structure" in data:
            S = structure_from_dict(data["structure"])
            instance = BlurInstance(S, frozenset(data["I"]), tuple(frozenset(W) for W in data["J"]),
                                    data.get("m", p.get("m", 3)))
        else:
            instance = BlurInstance.all_subsets(structure_from_dict(data), p.get("size", 1), p.get("m", 3))
    else:
        instance = BlurInstance.all_subsets(flexible_ra(p.get("k", 20)), p.get("size", 5), p.get("m", 3))
    return _result_of([blur_check(instance, budgets)])


def _matrix_basis(S: RaAtomStructure, m: int, budgets: Budgets):
    matrices = enumerate_basic_matrices(S, m, budgets)
    return basic_matrices(S, m, budgets), [network_from_matrix(f, matrices) for f in matrices]


def cmd_rep_build(manifest: RunManifest) -> RunResult:
    S = _structure_input(manifest)
    budgets = manifest.effective_budgets()
    p = manifest.params
    if p.get("mode", "prenetwork") == "square":
        n = p.get("n", 3)
        if isinstance(S, RaAtomStructure):
            S, basis = _matrix_basis(S, n, budgets)
        else:
            candidate = basis_fixpoint(S, n, budgets)
            if candidate is None:
                raise PreconditionError("La estructura no tiene base de ese tamaño")
            basis = candidate.networks()
        partial, report = build_square_rep(S, basis, p.get("steps", 50))
        return _result_of([report], hypergraph=partial.to_dict())
    if isinstance(S, RaAtomStructure):
        raise ValueError("El juego de prerredes requiere una estructura CA")
    R, report = build_prenetwork_rep(S, p.get("rounds", 30), signature=p.get("signature"), budgets=budgets)
    rep = validate_rep(R)
    run = _result_of([report, rep], rep=R.to_dict())
    if R.falsified:
        run.status = EXIT_FAILED
    return run


def cmd_graph(manifest: RunManifest) -> RunResult:
    p = manifest.params
    budgets = manifest.effective_budgets()
    if manifest.inputs:
        G = load_graph(manifest.inputs[0])
    else:
        G = parse_graph_spec(p.get("gen") or "complete:3", budgets.seed)
    chi = chromatic_number(G, budgets)
    g = girth(G)
    result = {
        "graph": graph_to_dict(G),
        "edgeList": graph_to_text(G),
        "chromaticNumber": chi,
        "cliqueLowerBound": clique_lower_bound(G),
        "greedyUpperBound": greedy_upper_bound(G),
        "girth": "infinity" if g == INFINITY else g,
    }
    if p.get("dot"):
        ok, path = render(graph_to_dot(G, colouring=find_k_colouring(G, chi)), p["dot"])
        result["dot"] = path if ok else None
        if not ok:
            log.error(path)
    return RunResult(EXIT_OK, result)


def cmd_coloured(manifest: RunManifest) -> RunResult:
    """
    Valida un grafo coloreado y lo exporta a DOT. Entrada: {"graph": {...}, "greens": ..., "reds": ...};
    sin greens/reds sólo se exporta.
    """
    if not manifest.inputs:
        raise ValueError("Se requiere --input con un grafo coloreado")
    data = read_json(manifest.inputs[0])
    M = coloured_graph_from_dict(data.get("graph", data))
    reports = []
    if "greens" in data and "reds" in data:
        reports.append(validate_coloured_graph(M, _pebble(data["greens"]), _pebble(data["reds"]),
                                               manifest.params.get("allow_shade", False)))
    run = _result_of(reports)
    ok, path = render(coloured_graph_to_dot(M), manifest.params.get("dot") or "exports/coloreado.dot")
    run.result["dot"] = path if ok else None
    if not ok:
        log.error(path)
    return run


# ============================================================================
# Suites
# ============================================================================
def _expect(name: str, condition: bool, detail: Dict[str, Any]) -> CheckReport:
    report = CheckReport(name)
    if not condition:
        report.fail(f"{name}.esperado", detail)
    return report


def suite_monk(budgets: Budgets) -> List[CheckReport]:
    graphs = {"K2": "complete:2", "K3": "complete:3", "C5": "cycle:5", "3K3": "disjointCliques:3,3"}
    reports = []
    for name, spec in graphs.items():
        report = check_ra_atomstructure(monk_ra(parse_graph_spec(spec), 3, budgets))
        report.name = f"monk-{name}"
        reports.append(report)
    for s in (1, 2, 4):
        report = check_ra_atomstructure(bin_ra(3, 1, s, budgets))
        report.name = f"bin-3-1-{s}"
        reports.append(report)
    rainbow = check_ra_atomstructure(rainbow_ra(3, 2))
    rainbow.name = "rainbow-3-2"
    eta = check_ca_axioms(eta_pea(parse_graph_spec("complete:2"), 3, budgets), AxiomVariant.PEA, budgets=budgets)
    return reports + [rainbow, eta]


def suite_psi(budgets: Budgets) -> List[CheckReport]:
    table = {(3, 1): 4, (4, 1): 14}
    return [_expect("psi", all(compute_psi(n, r) == v for (n, r), v in table.items()),
                    {"calculado": {f"{n},{r}": compute_psi(n, r) for n, r in table}})]


def suite_basis(budgets: Budgets) -> List[CheckReport]:
    good = cylindric_basis_check(monk_ra(parse_graph_spec("disjointCliques:3,3"), 3, budgets), 3, budgets)
    good.name = "mat3-monk-3K3"
    bad = cylindric_basis_check(rainbow_ra(3, 2), 3, budgets)
    return [good, _expect("mat3-rainbow-falla", not bad.passed, {"informe": bad.summary()})]


def suite_ef(budgets: Budgets) -> List[CheckReport]:
    A, B = pebble_structure("mPI", 1, 4), pebble_structure("mPI", 1, 3)
    by_pebbles: Dict[int, Dict[int, Any]] = {}
    table = CheckReport("ef-tabla")
    for p in (2, 3):
        by_pebbles[p] = {r: solve_ef(A, B, p, r, budgets=budgets) for r in range(7)}
        for r, outcome in by_pebbles[p].items():
            table.stats[f"p{p}r{r}"] = outcome.winner
    # ∃ no puede usar el nodo universal: el juego se reduce a L4 contra L3
    expected = {f"p{p}r{r}": EXISTS if r <= 2 else FORALL for p in by_pebbles for r in range(7)}
    reports = [table, _expect("ef-mpi", table.stats == expected, {"tabla": dict(table.stats)})]
    for p, outcomes in by_pebbles.items():
        reports.append(check_round_monotonicity(outcomes))
        reports.extend(replay_strategy(outcome) for outcome in outcomes.values())
    for r in range(7):
        reports.append(check_pebble_monotonicity({p: by_pebbles[p][r] for p in by_pebbles}))
    linear = {r: solve_ef(pebble_structure("linear", 4), pebble_structure("linear", 3), 2, r, budgets=budgets)
              for r in (2, 3)}
    reports.append(_expect("ef-lineales", linear[2].winner == EXISTS and linear[3].winner != EXISTS,
                           {r: o.winner for r, o in linear.items()}))
    return reports


def suite_blur(budgets: Budgets) -> List[CheckReport]:
    flexible = blur_check(BlurInstance.all_subsets(flexible_ra(20), 5, 3), budgets)
    narrow = blur_check(BlurInstance.all_subsets(monochromatic_ra(20), 1, 3), budgets)
    return [flexible, _expect("blur-l1-falla", not narrow.passed, {"informe": narrow.summary()})]


def suite_rep(budgets: Budgets) -> List[CheckReport]:
    S = basic_matrices(bin_ra(3, 1, 1, budgets), 3, budgets)
    R, game = build_prenetwork_rep(S, 30, signature="PTA", budgets=budgets)
    reports = [game, validate_rep(R), _expect("rep-sin-falsificacion", not R.falsified, {"estado": R.status})]
    M, basis = _matrix_basis(monk_ra(parse_graph_spec("disjointCliques:3,3"), 3, budgets), 3, budgets)
    partial, square = build_square_rep(M, basis, 50)
    reports.append(square)
    reports.append(_expect("rep-defectos", partial.processed >= 50, {"procesados": partial.processed}))
    return reports


SUITES: Dict[str, Callable[[Budgets], List[CheckReport]]] = {
    "monk": suite_monk,
    "psi": suite_psi,
    "basis": suite_basis,
    "ef": suite_ef,
    "blur": suite_blur,
    "rep": suite_rep,
}

SUITE_ALIASES: Dict[str, str] = {"paper-monk": "monk", "paper-ef": "ef"}


def cmd_suite(manifest: RunManifest) -> RunResult:
    preset = SUITE_ALIASES.get(manifest.params["preset"], manifest.params["preset"])
    if preset not in SUITES:
        known = ", ".join(list(SUITES) + list(SUITE_ALIASES))
        raise ValueError(f"Suite desconocida: {manifest.params['preset']!r} (disponibles: {known})")
    reports = SUITES[preset](manifest.effective_budgets())
    merged = merge_reports(f"suite-{preset}", reports)
    return _result_of(reports, summary=merged.summary())


COMMANDS: Dict[str, Callable[[RunManifest], RunResult]] = {
    "construct": cmd_construct,
    "check": cmd_check,
    "solve-game": cmd_solve_game,
    "basis": cmd_basis,
    "blur-check": cmd_blur_check,
    "rep-build": cmd_rep_build,
    "graph": cmd_graph,
    "coloured": cmd_coloured,
    "suite": cmd_suite,
}


# ============================================================================
# Ejecución
# ============================================================================
def run(manifest: RunManifest) -> Tuple[int, Dict[str, Any]]:
    """Ejecuta el manifiesto y devuelve (código de salida, documento JSON)"""
    document: Dict[str, Any] = {"manifest": manifest.to_dict()}
    try:
        outcome = COMMANDS[manifest.subcommand](manifest)
    except BudgetExceeded as e:
        log.error(str(e))
        document.update({"status": EXIT_BUDGET,
                         "budget": {"name": e.budget, "limit": e.limit, "requested": e.requested},
                         "error": str(e)})
        return EXIT_BUDGET, document
    except USAGE_ERRORS as e:
        log.error(str(e))
        document.update({"status": EXIT_USAGE, "error": str(e)})
        return EXIT_USAGE, document
    document.update({"status": outcome.status, "result": outcome.result})
    pdf = manifest.params.get("pdf")
    if pdf and outcome.reports:
        ok, message = export_report_pdf(merge_reports(manifest.subcommand, outcome.reports), pdf)
        if not ok:
            log.error(message)
    return outcome.status, document


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], help="Archivo de entrada (JSON o lista de aristas)")
    common.add_argument("--output", help="Archivo JSON del informe (por defecto, salida estándar)")
    common.add_argument("--pdf", help="Exporta además el informe a PDF")
    common.add_argument("--budget-atoms", type=int, help="Límite de átomos")
    common.add_argument("--budget-states", type=int, help="Límite de estados del resolvedor")
    common.add_argument("--seed", type=int, default=0, help="Semilla de toda aleatoriedad")
    common.add_argument("--jobs", type=int, default=1,
                        help="Se acepta por compatibilidad; la ejecución es secuencial")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Registro en nivel DEBUG")
    verbosity.add_argument("--quiet", action="store_true", help="Sólo advertencias y errores")

    parser = argparse.ArgumentParser(prog="algebras", description="Banco de álgebras de relaciones y cilíndricas finitas")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", parents=[common], help="Construye una estructura de átomos")
    p.add_argument("kind", choices=sorted(CONSTRUCTORS) + ["matrices"])
    p.add_argument("--graph", default="complete:3", help="Grafo: tipo:parámetros, p. ej. cycle:5")
    for name in ("n", "r", "s", "m", "k", "greens", "reds"):
        p.add_argument(f"--{name}", type=int)

    p = sub.add_parser("check", parents=[common], help="Axiomas y validadores de una estructura")
    p.add_argument("--axioms", default="auto", choices=["auto"] + [v.value for v in AxiomVariant])
    p.add_argument("--full-powerset", action="store_true", help="Todas las partes (≤ 16 átomos)")

    p = sub.add_parser("solve-game", parents=[common], help="Resuelve un juego descrito por un GameSpec JSON")
    p.add_argument("--no-strategy", action="store_true", help="Omite la estrategia en la salida")

    p = sub.add_parser("basis", parents=[common], help="Puntos fijos de base y verificación de Mat_m")
    p.add_argument("--mode", choices=["fixpoint", "cylindric"], default="fixpoint")
    p.add_argument("--n", type=int, default=3)

    p = sub.add_parser("blur-check", parents=[common], help="Condiciones de blur")
    p.add_argument("--size", type=int, default=5, help="Tamaño de los miembros de J")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--k", type=int, default=20, help="Átomos de la estructura flexible por defecto")

    p = sub.add_parser("rep-build", parents=[common], help="Construcción acotada de representaciones")
    p.add_argument("--mode", choices=["prenetwork", "square"], default="prenetwork")
    p.add_argument("--rounds", type=int, default=30)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--signature", choices=["PTA", "TA"])

    p = sub.add_parser("graph", parents=[common], help="Número cromático y cintura")
    p.add_argument("--gen", help="Generador tipo:parámetros")
    p.add_argument("--dot", help="Exporta el grafo coloreado con Graphviz")

    p = sub.add_parser("coloured", parents=[common], help="Exporta un grafo coloreado a DOT")
    p.add_argument("--dot", help="Archivo de salida")
    p.add_argument("--allow-shade", action="store_true", help="Admite la sombra rho")

    p = sub.add_parser("suite", parents=[common], help="Corre un conjunto de verificaciones predefinido")
    p.add_argument("preset")
    return parser


def manifest_from_args(args: argparse.Namespace) -> RunManifest:
    skip = {"input", "output", "seed", "jobs", "budget_atoms", "budget_states", "verbose", "quiet", "subcommand"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    budgets = {}
    if args.budget_atoms is not None:
        budgets["max_atoms"] = args.budget_atoms
    if args.budget_states is not None:
        budgets["max_states"] = args.budget_states
    return RunManifest(args.subcommand, params, list(args.input), args.output, args.seed, budgets, args.jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    manifest = manifest_from_args(args)
    status, document = run(manifest)
    if manifest.output:
        write_json(document, manifest.output)
        log.info("Informe escrito en %s", manifest.output)
    else:
        print(json.dumps(document, indent=2, ensure_ascii=False, default=str))
    return status
