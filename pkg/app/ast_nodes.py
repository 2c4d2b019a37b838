"""
Nodos del árbol de términos del álgebra (AlgebraTerm)
"""
from dataclasses import dataclass
from typing import Optional, Tuple


# ============================================================================
# Nodo base
# ============================================================================
@dataclass
class Term:
    """Clase base para todos los nodos de término"""
    pass


# ============================================================================
# Constantes y hojas
# ============================================================================
@dataclass
class Constant(Term):
    """Constante: zero (0), one (1) o identity (1')"""
    value: str
    line: int = 0
    col: int = 0


@dataclass
class AtomLiteral(Term):
    """Átomo por índice (#k) o por etiqueta ('nombre')"""
    index: Optional[int] = None
    label: Optional[str] = None
    line: int = 0
    col: int = 0


@dataclass
class Variable(Term):
    """Variable ligada en el entorno de evaluación"""
    name: str
    line: int = 0
    col: int = 0


@dataclass
class Diagonal(Term):
    """Diagonal d_ij"""
    i: int
    j: int
    line: int = 0
    col: int = 0


# ============================================================================
# Operadores
# ============================================================================
@dataclass
class UnaryOp(Term):
    """Complemento (-) o converso (conv)"""
    operator: str
    operand: Term
    line: int = 0
    col: int = 0


@dataclass
class IndexedOp(Term):
    """Operador con índices: c (c_i), s (s^i_j), sw (s_ij) o t (t^i_j)"""
    operator: str
    indices: Tuple[int, ...]
    operand: Term
    line: int = 0
    col: int = 0


@dataclass
class BinaryOp(Term):
    """Unión (+), intersección (*) o composición (;)"""
    operator: str
    left: Term
    right: Term
    line: int = 0
    col: int = 0


# ============================================================================
# Utilidades para imprimir términos
# ============================================================================
_CONSTANTS = {"zero": "0", "one": "1", "identity": "1'"}
_PRECEDENCE = {"+": 1, "*": 2, ";": 3}


def term_to_string(node: Term, parent: int = 0) -> str:
    """Convierte un término a la sintaxis concreta que acepta el parser"""
    if isinstance(node, Constant):
        return _CONSTANTS[node.value]

    elif isinstance(node, AtomLiteral):
        return f"#{node.index}" if node.index is not None else f"'{node.label}'"

    elif isinstance(node, Variable):
        return node.name

    elif isinstance(node, Diagonal):
        return f"d_{node.i}_{node.j}"

    elif isinstance(node, UnaryOp):
        if node.operator == "-":
            return "-" + term_to_string(node.operand, 4)
        return f"conv({term_to_string(node.operand)})"

    elif isinstance(node, IndexedOp):
        idx = "_".join(str(i) for i in node.indices)
        return f"{node.operator}_{idx}({term_to_string(node.operand)})"

    elif isinstance(node, BinaryOp):
        prec = _PRECEDENCE[node.operator]
        text = (f"{term_to_string(node.left, prec)} {node.operator} "
                f"{term_to_string(node.right, prec + 1)}")
        return f"({text})" if prec < parent else text

    else:
        return f"<{type(node).__name__}>"
