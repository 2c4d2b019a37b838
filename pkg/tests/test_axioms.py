import pytest

from app.atom_structures import CaAtomStructure, Flavor, RaAtomStructure, StructureError, ra_as_ca2
from app.axioms import (AxiomVariant, check_ca_atomstructure, check_ca_axioms, check_ra_atomstructure,
                        check_t_operators)
from app.config import BudgetExceeded
from app.constructions import bin_ra, flexible_ra, monk_ra, monochromatic_ra
from app.graphs import complete


# ============================================================================
# Estructuras RA
# ============================================================================
def test_pair_structure_is_an_ra_atom_structure(pair_ra):
    report = check_ra_atomstructure(pair_ra)
    assert report.passed, report.to_json()
    assert report.stats["atoms"] == 2


@pytest.mark.parametrize("build", [
    lambda: flexible_ra(2),
    lambda: monochromatic_ra(2),
    lambda: monk_ra(complete(1), 2),
    lambda: monk_ra(complete(2), 2),
    lambda: bin_ra(3, 1, 1),
    lambda: bin_ra(3, 1, 2),
])
def test_constructions_are_ra_atom_structures(build):
    assert check_ra_atomstructure(build()).passed


def test_converse_must_be_an_involution():
    S = RaAtomStructure(("1'", "a", "b"), frozenset({0}), (0, 2, 0), frozenset())
    assert "involucion" in check_ra_atomstructure(S).failed_checks()


def test_peircean_closure_is_required():
    S = RaAtomStructure(("1'", "a"), frozenset({0}), (0, 1), frozenset({(0, 0, 0), (1, 1, 0)}))
    report = check_ra_atomstructure(S)
    assert "peirce" in report.failed_checks()
    assert not report.passed


# ============================================================================
# Estructuras CA
# ============================================================================
def test_cylindric_relation_must_be_reflexive():
    S = CaAtomStructure(1, ("a", "b"), {}, ((0b10, 0b01),))
    assert check_ca_atomstructure(S).failed_checks() == ["cyl.reflexiva"]


def test_non_transitive_structure(non_transitive_ca):
    report = check_ca_atomstructure(non_transitive_ca)
    assert report.passed
    assert report.stats["transitive_0"] is False
    assert report.stats["transitive_1"] is True


# ============================================================================
# Listas de axiomas
# ============================================================================
def test_idempotence_fails_without_transitivity(non_transitive_ca):
    report = check_ca_axioms(non_transitive_ca, AxiomVariant.PTA)
    assert "C2" in report.failed_checks()
    assert report.first() is not None


def test_substitution_lists_need_substitutions(non_transitive_ca):
    with pytest.raises(StructureError):
        check_ca_axioms(non_transitive_ca, "PEA")


def test_diagonal_free_flavor_is_rejected():
    S = CaAtomStructure(2, ("e",), {(0, 1): 1}, ((1,), (1,)), Flavor.DF)
    with pytest.raises(StructureError):
        check_ca_axioms(S, "CA")


@pytest.mark.parametrize("variant", ["CA", "PTA"])
def test_two_element_algebra(single_atom_ca, variant):
    report = check_ca_axioms(single_atom_ca, variant, full_powerset=True)
    assert report.passed
    assert report.stats["instances"] > 0


def test_diagonal_axiom_fails(falsifying_ca):
    report = check_ca_axioms(falsifying_ca, "CA")
    assert "C7" in report.failed_checks()
    assert report.summary().startswith("axioms-CA: FALLIDO")


@pytest.mark.parametrize("variant", ["CA", "PTA", "TA", "PEA_n"])
def test_full_function_structure_satisfies_every_list(functions3, variant):
    report = check_ca_axioms(functions3, variant)
    assert report.passed, report.to_json()
    assert report.stats["sampled"] is False


def test_pair_structure_as_two_dimensional_algebra(pair_ra):
    report = check_ca_axioms(ra_as_ca2(pair_ra), "PEA", full_powerset=True)
    assert report.passed, report.to_json()


def test_full_powerset_is_bounded():
    S = ra_as_ca2(monochromatic_ra(16))
    with pytest.raises(BudgetExceeded):
        check_ca_axioms(S, "PEA", full_powerset=True)


# ============================================================================
# Operadores t^i_j
# ============================================================================
def test_t_operators_on_functions(functions3):
    report = check_t_operators(functions3)
    assert report.passed
    assert report.stats["comparisons"] > 0


def test_t_operator_must_send_atoms_to_atoms(falsifying_ca):
    assert "t.atomo" in check_t_operators(falsifying_ca, max_length=1).failed_checks()
