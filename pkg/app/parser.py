"""
Analizador Sintáctico LL(1) Descendente Recursivo para términos del álgebra
"""
from functools import lru_cache
from typing import List, Optional, Tuple
from .tokens import Token
from .lexer import Lexer
from .ast_nodes import (Term, Constant, AtomLiteral, Variable, Diagonal,
                        UnaryOp, IndexedOp, BinaryOp)


class ParseError(Exception):
    """Error de análisis sintáctico"""
    def __init__(self, token: Token, message: str):
        self.token = token
        self.message = message
        super().__init__(
            f"Error sintáctico en línea {token.line}, columna {token.col}: "
            f"{message}\nToken: {token.type} '{token.lexeme}'"
        )


class Parser:
    """
    Analizador sintáctico LL(1) descendente recursivo

    Gramática LL(1):

    Term        -> Join EOF
    Join        -> Meet JoinTail
    JoinTail    -> + Meet JoinTail | ε
    Meet        -> Comp MeetTail
    MeetTail    -> * Comp MeetTail | ε
    Comp        -> Unary CompTail
    CompTail    -> ; Unary CompTail | ε
    Unary       -> - Unary | Postfix
    Postfix     -> Primary PostfixTail
    PostfixTail -> ^ PostfixTail | ε
    Primary     -> NUM | 1' | #k | 'etiqueta' | d_i_j | ID | conv ( Join ) | Indexed | ( Join )
    Indexed     -> c_i ( Join ) | s_i_j ( Join ) | sw_i_j ( Join ) | t_i_j ( Join )
    """

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.current = tokens[0] if tokens else None

    # ========================================================================
    # Utilidades básicas
    # ========================================================================

    def peek(self, offset: int = 0) -> Token:
        """Mira el token en la posición actual + offset"""
        idx = self.pos + offset
        if idx < len(self.tokens):
            return self.tokens[idx]
        return self.tokens[-1]  # EOF

    def advance(self) -> Token:
        """Avanza al siguiente token y retorna el actual"""
        token = self.current
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
            self.current = self.tokens[self.pos]
        return token

    def check(self, *types: str) -> bool:
        """Verifica si el token actual es de alguno de los tipos dados"""
        return self.current.type in types

    def match(self, *types: str) -> Optional[Token]:
        """Si el token actual coincide, lo consume y retorna; sino retorna None"""
        if self.check(*types):
            return self.advance()
        return None

    def expect(self, *types: str) -> Token:
        """Espera uno de los tipos dados, consume y retorna; sino lanza error"""
        if self.check(*types):
            return self.advance()
        expected = " o ".join(types)
        raise ParseError(
            self.current,
            f"Se esperaba {expected}, se encontró {self.current.type}"
        )

    # ========================================================================
    # Punto de entrada
    # ========================================================================

    def parse(self) -> Term:
        """Term -> Join EOF"""
        term = self.parse_join()
        self.expect("EOF")
        return term

    # ========================================================================
    # Expresiones por precedencia
    # ========================================================================

    def parse_join(self) -> Term:
        """Join -> Meet JoinTail"""
        left = self.parse_meet()
        while self.check("PLUS"):
            op = self.advance()
            right = self.parse_meet()
            left = BinaryOp("+", left, right, op.line, op.col)
        return left

    def parse_meet(self) -> Term:
        """Meet -> Comp MeetTail"""
        left = self.parse_comp()
        while self.check("STAR"):
            op = self.advance()
            right = self.parse_comp()
            left = BinaryOp("*", left, right, op.line, op.col)
        return left

    def parse_comp(self) -> Term:
        """Comp -> Unary CompTail"""
        left = self.parse_unary()
        while self.check("SEMI"):
            op = self.advance()
            right = self.parse_unary()
            left = BinaryOp(";", left, right, op.line, op.col)
        return left

    def parse_unary(self) -> Term:
        """Unary -> - Unary | Postfix"""
        if self.check("MINUS"):
            op = self.advance()
            return UnaryOp("-", self.parse_unary(), op.line, op.col)
        return self.parse_postfix()

    def parse_postfix(self) -> Term:
        """Postfix -> Primary PostfixTail"""
        expr = self.parse_primary()
        while self.check("CARET"):
            op = self.advance()
            expr = UnaryOp("conv", expr, op.line, op.col)
        return expr

    def parse_primary(self) -> Term:
        """Primary -> NUM | 1' | #k | 'etiqueta' | d_i_j | ID | conv ( Join ) | Indexed | ( Join )"""
        tok = self.current

        if self.match("NUM"):
            if tok.lexeme == "0":
                return Constant("zero", tok.line, tok.col)
            if tok.lexeme == "1":
                return Constant("one", tok.line, tok.col)
            raise ParseError(tok, "Sólo se admiten las constantes numéricas 0 y 1")

        if self.match("IDENTITY"):
            return Constant("identity", tok.line, tok.col)

        if self.match("ATOM_INDEX"):
            return AtomLiteral(index=int(tok.lexeme[1:]), line=tok.line, col=tok.col)

        if self.match("ATOM_LABEL"):
            return AtomLiteral(label=tok.lexeme[1:-1], line=tok.line, col=tok.col)

        if self.match("DIAG"):
            i, j = self._indices(tok, 2)
            return Diagonal(i, j, tok.line, tok.col)

        if self.match("ID"):
            return Variable(tok.lexeme, tok.line, tok.col)

        if self.match("CONV"):
            return UnaryOp("conv", self._argument(), tok.line, tok.col)

        if self.check("CYL", "SUBST", "SWAP", "TOP"):
            return self.parse_indexed()

        if self.match("LPAREN"):
            expr = self.parse_join()
            self.expect("RPAREN")
            return expr

        raise ParseError(tok, f"Expresión inesperada: {tok.type}")

    def parse_indexed(self) -> Term:
        """Indexed -> c_i ( Join ) | s_i_j ( Join ) | sw_i_j ( Join ) | t_i_j ( Join )"""
        tok = self.advance()
        if tok.type == "CYL":
            indices = self._indices(tok, 1)
            operator = "c"
        else:
            indices = self._indices(tok, 2)
            operator = {"SUBST": "s", "SWAP": "sw", "TOP": "t"}[tok.type]
        return IndexedOp(operator, indices, self._argument(), tok.line, tok.col)

    # ------------------------------------------------------------------
    def _argument(self) -> Term:
        self.expect("LPAREN")
        expr = self.parse_join()
        self.expect("RPAREN")
        return expr

    def _indices(self, tok: Token, count: int) -> Tuple[int, ...]:
        parts = tok.lexeme.split("_")[1:]
        if len(parts) != count:
            raise ParseError(tok, f"Se esperaban {count} índices en {tok.lexeme}")
        return tuple(int(p) for p in parts)


@lru_cache(maxsize=4096)
def parse_term(text: str) -> Term:
    """Analiza un término en sintaxis concreta; los árboles se comparten, no mutarlos"""
    return Parser(Lexer(text).tokenize()).parse()
