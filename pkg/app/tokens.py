from dataclasses import dataclass

NON_TERMINALS = [
    "Term", "Join", "JoinTail", "Meet", "MeetTail", "Comp", "CompTail",
    "Unary", "Postfix", "PostfixTail", "Primary", "Indexed"
]

KEYWORDS = {
    "conv": "CONV",
}

# Operadores indexados: c_i, d_i_j, s_i_j (s^i_j), sw_i_j (s_ij), t_i_j (t^i_j)
INDEXED = {
    "c": "CYL", "d": "DIAG", "s": "SUBST", "sw": "SWAP", "t": "TOP",
}

OPERATORS = [
    "1'", "+", "*", ";", "-", "^", "(", ")",
]

TOKEN_NAME = {
    "1'": "IDENTITY", "+": "PLUS", "*": "STAR", ";": "SEMI", "-": "MINUS",
    "^": "CARET", "(": "LPAREN", ")": "RPAREN",
}


@dataclass(frozen=True)
class Token:
    type: str
    lexeme: str
    line: int
    col: int


class LexError(Exception):
    def __init__(self, line: int, col: int, lexeme: str):
        super().__init__(f"Error léxico en línea {line}, columna {col}: {lexeme!r}")
        self.line = line; self.col = col; self.lexeme = lexeme
