import pytest

from app.atom_structures import StructureError, popcount
from app.axioms import check_ca_atomstructure
from app.config import Budgets, BudgetExceeded
from app.constructions import (basic_matrices, bin_ra, compute_psi, enumerate_basic_matrices, eta_pea,
                               flexible_ra, function_structure, kappa, monk_ra, rainbow_ra)
from app.graphs import complete


# ============================================================================
# κ y ψ
# ============================================================================
def test_kappa():
    assert kappa(5, 0) == 0
    assert kappa(2, 2) == 3
    assert kappa(3, 3) == 13
    with pytest.raises(StructureError):
        kappa(-1, 2)


@pytest.mark.parametrize("n, r, expected", [(3, 1, 4), (4, 1, 14), (3, 3, 9332)])
def test_psi(n, r, expected):
    assert compute_psi(n, r) == expected


def test_psi_is_exact_for_large_arguments():
    assert compute_psi(11, 10) == kappa(100, 100) + 1
    assert compute_psi(11, 10) > 10 ** 196


# ============================================================================
# Estructuras RA
# ============================================================================
def test_monk_structure():
    S = monk_ra(complete(2), 3)
    assert S.size == 7
    assert S.atoms[0] == "1'"
    # (0,0) tres veces: monocromático sobre un conjunto independiente
    assert not S.is_consistent(1, 1, 1)
    # (0,0), (1,0), (0,0): los nodos 0 y 1 son adyacentes
    assert S.is_consistent(1, 4, 1)
    assert S.provenance["kind"] == "monk"


def test_monk_requires_two_colours():
    with pytest.raises(StructureError):
        monk_ra(complete(2), 1)


def test_bin_sizes():
    assert bin_ra(3, 1).size == 9
    assert bin_ra(3, 1, 1).size == 3
    assert bin_ra(3, 1, 1).atoms == ("Id", "a0(0,0)", "a0(1,0)")
    with pytest.raises(StructureError):
        bin_ra(2, 1)


def test_bin_respects_atom_budget():
    with pytest.raises(BudgetExceeded) as info:
        bin_ra(3, 1, budgets=Budgets(max_atoms=5))
    assert info.value.requested == 9


def test_rainbow_structure():
    S = rainbow_ra(3, 2)
    assert S.size == 6
    assert S.atoms == ("1'", "g0_0", "g0_1", "g0_2", "r_1", "r_2")
    assert not S.is_consistent(1, 2, 3)
    assert not S.is_consistent(4, 4, 4)
    assert S.is_consistent(4, 4, 5)
    assert S.is_consistent(4, 1, 2)


def test_flexible_composition():
    S = flexible_ra(2)
    assert S.compose_atoms(1, 1) == 0b111
    assert S.compose_atoms(1, 2) == 0b110


# ============================================================================
# Estructuras CA
# ============================================================================
def test_basic_matrices_count():
    assert len(enumerate_basic_matrices(flexible_ra(2), 3)) == 15
    assert enumerate_basic_matrices(flexible_ra(2), 2)[1].label(flexible_ra(2)) == "[x0]"
    with pytest.raises(StructureError):
        enumerate_basic_matrices(flexible_ra(2), 1)


def test_basic_matrices_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_basic_matrices(flexible_ra(2), 3, Budgets(max_matrices=10))


def test_matrix_structure_of_bin():
    M = basic_matrices(bin_ra(3, 1, 1), 3)
    assert M.size == 13
    assert M.dimension == 3
    assert popcount(M.diagonal(0, 1)) == 3
    assert check_ca_atomstructure(M).passed


def test_eta_structure():
    S = eta_pea(complete(2))
    assert S.size == 181
    assert S.dimension == 3
    assert S.has_subst()
    with pytest.raises(StructureError):
        eta_pea(complete(2), 2)


def test_function_structure(functions3):
    assert functions3.size == 8
    assert functions3.atoms[:2] == ("000", "001")
    assert functions3.cylindrify(0, 0b1) == 0b10001
    assert functions3.subst_atom(0, 1, 4) == 2
    assert functions3.diagonal(1, 2) == 0b10011001
