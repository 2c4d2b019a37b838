import pytest

from app.ast_nodes import AtomLiteral, BinaryOp, Constant, Diagonal, IndexedOp, UnaryOp, Variable, term_to_string
from app.lexer import Lexer
from app.parser import ParseError, parse_term
from app.semantic_analyzer import TermChecker, signature_of
from app.symbol_table import Environment
from app.tokens import LexError


def types_of(src):
    return [t.type for t in Lexer(src).tokenize()]


# ============================================================================
# Léxico
# ============================================================================
def test_tokens_of_cylindric_term():
    assert types_of("c_0(x) + d_0_1") == ["CYL", "LPAREN", "ID", "RPAREN", "PLUS", "DIAG", "EOF"]


def test_tokens_of_relation_term():
    assert types_of("conv(#1) ; 'a' * 1'") == ["CONV", "LPAREN", "ATOM_INDEX", "RPAREN", "SEMI",
                                             "ATOM_LABEL", "STAR", "IDENTITY", "EOF"]


def test_swap_is_not_read_as_substitution():
    tokens = Lexer("sw_0_1(x) s_1_0(y)").tokenize()
    assert [t.type for t in tokens[:2]] == ["SWAP", "LPAREN"]
    assert tokens[4].type == "SUBST"


def test_bare_letters_are_variables():
    assert types_of("s t c") == ["ID", "ID", "ID", "EOF"]


def test_comment_and_positions():
    tokens = Lexer("% comentario\n  x").tokenize()
    assert tokens[0].type == "ID"
    assert (tokens[0].line, tokens[0].col) == (2, 3)


@pytest.mark.parametrize("src", ["x @ y", "#", "'sin cerrar"])
def test_lex_errors(src):
    with pytest.raises(LexError):
        Lexer(src).tokenize()


# ============================================================================
# Sintaxis
# ============================================================================
def test_join_binds_weaker_than_meet():
    term = parse_term("x + y * z")
    assert isinstance(term, BinaryOp) and term.operator == "+"
    assert isinstance(term.left, Variable)
    assert term.right.operator == "*"


def test_composition_binds_tighter_than_meet():
    term = parse_term("x ; y * z")
    assert term.operator == "*"
    assert term.left.operator == ";"


def test_complement_of_postfix_converse():
    term = parse_term("-x^")
    assert isinstance(term, UnaryOp) and term.operator == "-"
    assert isinstance(term.operand, UnaryOp) and term.operand.operator == "conv"


def test_primaries():
    assert parse_term("0") == Constant("zero", 1, 1)
    assert parse_term("1").value == "one"
    assert parse_term("1'").value == "identity"
    assert parse_term("#3") == AtomLiteral(index=3, line=1, col=1)
    assert parse_term("'g0_1'").label == "g0_1"
    assert parse_term("d_2_0") == Diagonal(2, 0, 1, 1)


def test_indexed_operators():
    term = parse_term("t_0_2(c_1(x))")
    assert isinstance(term, IndexedOp)
    assert (term.operator, term.indices) == ("t", (0, 2))
    assert (term.operand.operator, term.operand.indices) == ("c", (1,))


@pytest.mark.parametrize("src", ["2", "c_0_1(x)", "d_0", "(x", "x y", "+ x", "conv x"])
def test_parse_errors(src):
    with pytest.raises(ParseError):
        parse_term(src)


def test_term_to_string_reparses():
    text = "c_0(x * d_0_1) + -y"
    assert term_to_string(parse_term(text)) == text
    assert term_to_string(parse_term("(x + y) ; z")) == "(x + y) ; z"


# ============================================================================
# Semántica
# ============================================================================
def test_ra_signature_rejects_cylindric_operators(pair_ra):
    checker = TermChecker(signature_of(pair_ra), Environment({"x": 1}))
    assert not checker.check(parse_term("c_0(x)"))
    assert any("no disponible" in e.message for e in checker.errors)


def test_unbound_variable(pair_ra):
    checker = TermChecker(signature_of(pair_ra))
    assert not checker.check(parse_term("x ; 1'"))
    assert "no ligada" in checker.errors[0].message


def test_unused_binding_is_a_warning(pair_ra):
    checker = TermChecker(signature_of(pair_ra), Environment({"x": 1, "y": 2}))
    assert checker.check(parse_term("x"))
    assert len(checker.warnings) == 1
    assert "'y'" in checker.warnings[0]


def test_unknown_atoms(pair_ra):
    checker = TermChecker(signature_of(pair_ra))
    assert not checker.check(parse_term("#5 + 'b'"))
    assert len(checker.errors) == 2


def test_ca_indices_and_flavor(non_transitive_ca, ta4):
    pta = TermChecker(signature_of(non_transitive_ca))
    assert not pta.check(parse_term("sw_0_1(1)"))
    assert not pta.check(parse_term("c_2(1)"))
    assert pta.check(parse_term("s_0_1(d_0_1) + t_1_0(0)"))
    assert TermChecker(signature_of(ta4)).check(parse_term("sw_0_1(#1)"))
    assert not TermChecker(signature_of(ta4)).check(parse_term("1'"))


def test_environment_bindings():
    env = Environment({"x": [0, 2]})
    assert env.values() == {"x": 0b101}
    assert not env.define("x", 1)
    assert env.define("y", 2)
    env.mark_used("x")
    assert [b.name for b in env.get_unused()] == ["y"]
