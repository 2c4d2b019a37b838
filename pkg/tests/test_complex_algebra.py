import pytest

from app.complex_algebra import cm_eval_ca, cm_eval_ra, compile_term
from app.semantic_analyzer import SemanticError
from app.symbol_table import Environment


@pytest.mark.parametrize("term, expected", [
    ("#1;#1", 0b11),
    ("1';#1", 0b10),
    ("-1'", 0b10),
    ("conv(#1)", 0b10),
    ("#1^", 0b10),
    ("'a' * 1'", 0),
    ("0 + 1", 0b11),
])
def test_relation_terms(pair_ra, term, expected):
    assert cm_eval_ra(pair_ra, term) == expected


def test_relation_variables(pair_ra):
    assert cm_eval_ra(pair_ra, "x + y", {"x": [0], "y": [1]}) == 0b11
    assert cm_eval_ra(pair_ra, "x ; x", Environment({"x": 0b01})) == 0b01


def test_unknown_atom_index(pair_ra):
    with pytest.raises(SemanticError):
        cm_eval_ra(pair_ra, "#5")


@pytest.mark.parametrize("term, expected", [
    ("c_0(#1)", 0b11),
    ("d_0_1", 0b01),
    ("d_1_1", 0b11),
    ("s_0_1(#1)", 0),
    ("s_0_1(#0)", 0b11),
    ("t_0_1(#1)", 0b01),
    ("sw_0_1(#1)", 0b10),
    ("-d_0_1", 0b10),
])
def test_cylindric_terms(ta4, term, expected):
    assert cm_eval_ca(ta4, term) == expected


def test_identity_is_not_cylindric(ta4):
    with pytest.raises(SemanticError):
        cm_eval_ca(ta4, "1'")


def test_wrong_structure_kind(pair_ra, ta4):
    with pytest.raises(SemanticError):
        cm_eval_ra(ta4, "1")
    with pytest.raises(SemanticError):
        cm_eval_ca(pair_ra, "1")


def test_compiled_term_is_reusable(pair_ra):
    f = compile_term(pair_ra, "x ; y", ["x", "y"])
    assert f({"x": 0b10, "y": 0b10}) == 0b11
    assert f({"x": 0b01, "y": 0b10}) == 0b10
    assert f({"x": 0, "y": 0b11}) == 0


def test_compile_rejects_free_variables(pair_ra):
    with pytest.raises(SemanticError):
        compile_term(pair_ra, "x ; z", ["x"])
