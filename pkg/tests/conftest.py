"""
Estructuras pequeñas compartidas por las pruebas
"""
import pytest

from app.atom_structures import CaAtomStructure, Flavor, RaAtomStructure
from app.constructions import function_structure


def _pair_consistent(a, b, c):
    if b == 0:
        return a == c
    if c == 0:
        return a == b
    if a == 0:
        return b == c
    return True


@pytest.fixture
def pair_ra():
    """1' y un átomo a autoconverso con a;a = 1' + a"""
    return RaAtomStructure.from_predicate(["1'", "a"], [0], [0, 1], _pair_consistent)


@pytest.fixture
def ta4():
    """Dos átomos, p en la diagonal; su álgebra compleja tiene 4 elementos"""
    return CaAtomStructure(2, ("p", "q"), {(0, 1): 1}, ((3, 3), (3, 3)), Flavor.TA, {(0, 1): (0, 1)})


@pytest.fixture
def single_atom_ca():
    return CaAtomStructure(2, ("e",), {(0, 1): 1}, ((1,), (1,)), Flavor.PTA)


@pytest.fixture
def non_transitive_ca():
    """≡_0 reflexiva y simétrica pero no transitiva"""
    return CaAtomStructure(2, ("a", "b", "c"), {(0, 1): 0b111},
                           ((0b011, 0b111, 0b110), (0b001, 0b010, 0b100)), Flavor.PTA)


@pytest.fixture
def falsifying_ca():
    return CaAtomStructure(2, ("a", "b", "c"), {(0, 1): 0b011}, ((7, 7, 7), (7, 7, 7)), Flavor.PTA)


@pytest.fixture(scope="session")
def functions3():
    """³2: las funciones 3 -> 2"""
    return function_structure(3)

