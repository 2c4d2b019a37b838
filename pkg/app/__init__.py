"""
Banco de álgebras de relaciones y cilíndricas finitas
"""
from .atom_structures import CaAtomStructure, RaAtomStructure, StructureError, Flavor
from .lexer import Lexer
from .tokens import LexError
from .parser import Parser, ParseError, parse_term
from .complex_algebra import cm_eval_ra, cm_eval_ca
from .config import Budgets, BudgetExceeded, PreconditionError
from .report import CheckReport

__all__ = [
    'CaAtomStructure', 'RaAtomStructure', 'StructureError', 'Flavor',
    'Lexer', 'LexError',
    'Parser', 'ParseError', 'parse_term',
    'cm_eval_ra', 'cm_eval_ca',
    'Budgets', 'BudgetExceeded', 'PreconditionError',
    'CheckReport',
]
