"""
Analizador Semántico de términos
Verifica, antes de evaluar un término contra una estructura:
- Variables ligadas en el entorno
- Átomos existentes
- Operadores disponibles para la signatura (RA o sabor CA)
- Índices menores que la dimensión
- Ligaduras no usadas (warnings)
"""
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple, Union

from .ast_nodes import (Term, Constant, AtomLiteral, Variable, Diagonal,
                        UnaryOp, IndexedOp, BinaryOp)
from .atom_structures import CaAtomStructure, Flavor, RaAtomStructure
from .symbol_table import Environment


class SemanticError(Exception):
    """Error de análisis semántico"""
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"Error semántico en línea {line}, columna {col}: {message}")


# Operadores por sabor; "diag" cubre las constantes d_ij
_RA_OPS = frozenset({"zero", "one", "identity", "-", "conv", "+", "*", ";"})
_BOOLEAN = frozenset({"zero", "one", "-", "+", "*"})
_FLAVOR_OPS = {
    Flavor.DF: _BOOLEAN | {"c"},
    Flavor.CA: _BOOLEAN | {"c", "diag", "s", "t"},
    Flavor.PTA: _BOOLEAN | {"c", "diag", "s", "t"},
    Flavor.TA: _BOOLEAN | {"c", "diag", "s", "t", "sw"},
    Flavor.PEA: _BOOLEAN | {"c", "diag", "s", "t", "sw"},
}


@dataclass(frozen=True)
class Signature:
    """Lo que una estructura admite en sus términos"""
    name: str
    operators: FrozenSet[str]
    dimension: int
    atoms: Tuple[str, ...]


def signature_of(S: Union[RaAtomStructure, CaAtomStructure]) -> Signature:
    if isinstance(S, RaAtomStructure):
        return Signature("RA", _RA_OPS, 0, S.atoms)
    ops = _FLAVOR_OPS[S.flavor]
    if not S.has_subst():
        ops = ops - {"sw"}
    return Signature(S.flavor.value, ops, S.dimension, S.atoms)


class TermChecker:
    """
    Recorre el término y acumula errores y warnings, como el analizador de programas:
    check() retorna True si no hay errores.
    """

    def __init__(self, signature: Signature, env: Optional[Environment] = None):
        self.signature = signature
        self.env = env or Environment()
        self.errors: List[SemanticError] = []
        self.warnings: List[str] = []

    def check(self, term: Term, report_unused: bool = True) -> bool:
        self.errors = []
        self.warnings = []
        self.visit(term)
        if report_unused:
            for binding in self.env.get_unused():
                self._add_warning(0, 0, f"variable '{binding.name}' ligada pero no usada")
        return len(self.errors) == 0

    def _add_error(self, node: Term, message: str):
        self.errors.append(SemanticError(getattr(node, "line", 0), getattr(node, "col", 0), message))

    def _add_warning(self, line: int, col: int, message: str):
        self.warnings.append(f"Warning línea {line}, col {col}: {message}")

    def _require(self, node: Term, operator: str, shown: str):
        if operator not in self.signature.operators:
            self._add_error(node, f"Operador '{shown}' no disponible para la signatura {self.signature.name}")

    def _check_indices(self, node: Term, indices: Tuple[int, ...]):
        for i in indices:
            if i >= self.signature.dimension:
                self._add_error(node, f"Índice {i} fuera de rango (dimensión {self.signature.dimension})")

    # ========================================================================
    # Visitors
    # ========================================================================

    def visit(self, node: Term):
        """Dispatcher por tipo de nodo"""
        if isinstance(node, Constant):
            self._require(node, node.value, {"zero": "0", "one": "1", "identity": "1'"}[node.value])
        elif isinstance(node, AtomLiteral):
            self.visit_atom(node)
        elif isinstance(node, Variable):
            if node.name not in self.env:
                self._add_error(node, f"Variable '{node.name}' no ligada")
            else:
                self.env.mark_used(node.name)
        elif isinstance(node, Diagonal):
            self._require(node, "diag", f"d_{node.i}_{node.j}")
            self._check_indices(node, (node.i, node.j))
        elif isinstance(node, UnaryOp):
            self._require(node, node.operator, node.operator)
            self.visit(node.operand)
        elif isinstance(node, IndexedOp):
            self._require(node, node.operator, node.operator + "_" + "_".join(map(str, node.indices)))
            self._check_indices(node, node.indices)
            self.visit(node.operand)
        elif isinstance(node, BinaryOp):
            self._require(node, node.operator, node.operator)
            self.visit(node.left)
            self.visit(node.right)
        else:
            self._add_error(node, f"Nodo desconocido: {type(node).__name__}")

    def visit_atom(self, node: AtomLiteral):
        if node.index is not None:
            if node.index >= len(self.signature.atoms):
                self._add_error(node, f"Átomo #{node.index} inexistente")
        elif node.label not in self.signature.atoms:
            self._add_error(node, f"Átomo '{node.label}' inexistente")
