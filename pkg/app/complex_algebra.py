"""
Evaluación de términos en el álgebra compleja Cm(S) de una estructura de átomos
Los términos se compilan a clausuras sobre bitsets y luego se evalúan
"""
import logging
from typing import Callable, Dict, Iterable, Mapping, Optional, Union

from .ast_nodes import (Term, Constant, AtomLiteral, Variable, Diagonal,
                        UnaryOp, IndexedOp, BinaryOp)
from .atom_structures import CaAtomStructure, RaAtomStructure, StructureError
from .parser import parse_term
from .semantic_analyzer import SemanticError, TermChecker, signature_of
from .symbol_table import BindingKind, Environment

log = logging.getLogger(__name__)

Compiled = Callable[[Dict[str, int]], int]
EnvLike = Union[Environment, Mapping[str, Union[int, Iterable[int]]], None]


class Evaluator:
    """Compilador común: constantes booleanas, variables, átomos y conectivas"""

    def __init__(self, S):
        self.S = S
        self.full = S.full

    def compile(self, node: Term) -> Compiled:
        if isinstance(node, Constant):
            value = self.constant(node)
            return lambda env: value
        if isinstance(node, AtomLiteral):
            index = node.index if node.index is not None else self.S.index_of(node.label)
            if index >= self.S.size:
                raise StructureError(f"Átomo #{index} inexistente")
            value = 1 << index
            return lambda env: value
        if isinstance(node, Variable):
            name = node.name
            return lambda env: env[name]
        if isinstance(node, UnaryOp) and node.operator == "-":
            inner = self.compile(node.operand)
            full = self.full
            return lambda env: full & ~inner(env)
        if isinstance(node, BinaryOp) and node.operator in ("+", "*"):
            left, right = self.compile(node.left), self.compile(node.right)
            if node.operator == "+":
                return lambda env: left(env) | right(env)
            return lambda env: left(env) & right(env)
        return self.compile_specific(node)

    def constant(self, node: Constant) -> int:
        if node.value == "zero":
            return 0
        if node.value == "one":
            return self.full
        raise SemanticError(node.line, node.col, f"Constante '{node.value}' no disponible")

    def compile_specific(self, node: Term) -> Compiled:
        raise SemanticError(getattr(node, "line", 0), getattr(node, "col", 0),
                            f"Operador no disponible: {type(node).__name__}")


class RaEvaluator(Evaluator):
    """Cm de una estructura RA: composición por triples consistentes"""

    def constant(self, node: Constant) -> int:
        if node.value == "identity":
            return self.S.identity_mask
        return super().constant(node)

    def compile_specific(self, node: Term) -> Compiled:
        S = self.S
        if isinstance(node, UnaryOp) and node.operator == "conv":
            inner = self.compile(node.operand)
            return lambda env: S.converse_set(inner(env))
        if isinstance(node, BinaryOp) and node.operator == ";":
            left, right = self.compile(node.left), self.compile(node.right)
            return lambda env: S.compose(left(env), right(env))
        return super().compile_specific(node)


class CaEvaluator(Evaluator):
    """Cm de una estructura CA: c_i, d_ij, s^i_j, t^i_j y s_ij"""

    def compile_specific(self, node: Term) -> Compiled:
        S = self.S
        if isinstance(node, Diagonal):
            value = S.diagonal(node.i, node.j)
            return lambda env: value
        if isinstance(node, IndexedOp):
            inner = self.compile(node.operand)
            if node.operator == "c":
                i = node.indices[0]
                return lambda env: S.cylindrify(i, inner(env))
            i, j = node.indices
            if node.operator == "s":
                return lambda env: S.replace(i, j, inner(env))
            if node.operator == "t":
                return lambda env: S.t_op(i, j, inner(env))
            if node.operator == "sw":
                return lambda env: S.transpose(i, j, inner(env))
        return super().compile_specific(node)


# ============================================================================
# API pública
# ============================================================================
def _environment(env: EnvLike) -> Environment:
    if isinstance(env, Environment):
        return env
    return Environment(env or {})


def compile_term(S: Union[RaAtomStructure, CaAtomStructure], term: Union[str, Term],
                 variables: Iterable[str] = ()) -> Compiled:
    """Verifica el término contra la signatura de S y lo compila; las variables quedan abiertas"""
    node = parse_term(term) if isinstance(term, str) else term
    placeholders = Environment({v: 0 for v in variables}, BindingKind.AXIOM_ARGUMENT)
    checker = TermChecker(signature_of(S), placeholders)
    if not checker.check(node, report_unused=False):
        raise checker.errors[0]
    evaluator = RaEvaluator(S) if isinstance(S, RaAtomStructure) else CaEvaluator(S)
    return evaluator.compile(node)


def _evaluate(S, t: Union[str, Term], env: EnvLike) -> int:
    node = parse_term(t) if isinstance(t, str) else t
    environment = _environment(env)
    checker = TermChecker(signature_of(S), environment)
    if not checker.check(node):
        raise checker.errors[0]
    for warning in checker.warnings:
        log.debug(warning)
    evaluator = RaEvaluator(S) if isinstance(S, RaAtomStructure) else CaEvaluator(S)
    return evaluator.compile(node)(environment.values())


def cm_eval_ra(S: RaAtomStructure, t: Union[str, Term], env: EnvLike = None) -> int:
    """Valor de t en Cm(S) para una estructura RA, como bitset de átomos"""
    if not isinstance(S, RaAtomStructure):
        raise SemanticError(0, 0, "cm_eval_ra requiere una estructura RA")
    return _evaluate(S, t, env)


def cm_eval_ca(S: CaAtomStructure, t: Union[str, Term], env: EnvLike = None) -> int:
    """Valor de t en Cm(S) para una estructura CA, como bitset de átomos"""
    if not isinstance(S, CaAtomStructure):
        raise SemanticError(0, 0, "cm_eval_ca requiere una estructura CA")
    return _evaluate(S, t, env)
