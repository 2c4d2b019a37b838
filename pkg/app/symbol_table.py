"""
Entorno de variables para la evaluación de términos
Liga nombres de variable con conjuntos de átomos (bitsets)
"""
from typing import Dict, Iterable, List, Mapping, Optional, Union
from enum import Enum
from dataclasses import dataclass

from .atom_structures import to_mask


class BindingKind(Enum):
    """Origen de una ligadura"""
    VARIABLE = "variable"
    AXIOM_ARGUMENT = "axiom-argument"


@dataclass
class Binding:
    """Una variable ligada a un bitset de átomos"""
    name: str
    value: int
    kind: BindingKind = BindingKind.VARIABLE
    used: bool = False


class Environment:
    """Entorno plano de ligaduras nombre -> bitset"""

    def __init__(self, bindings: Optional[Mapping[str, Union[int, Iterable[int]]]] = None,
                 kind: BindingKind = BindingKind.VARIABLE):
        self.bindings: Dict[str, Binding] = {}
        for name, value in (bindings or {}).items():
            self.define(name, value, kind)

    def define(self, name: str, value: Union[int, Iterable[int]],
               kind: BindingKind = BindingKind.VARIABLE) -> bool:
        """
        Liga una variable. Un entero se toma como bitset; un iterable como índices de átomos.
        Retorna False si ya estaba ligada (y la reemplaza).
        """
        mask = value if isinstance(value, int) else to_mask(value)
        existed = name in self.bindings
        self.bindings[name] = Binding(name, mask, kind)
        return not existed

    def lookup(self, name: str) -> Optional[Binding]:
        return self.bindings.get(name)

    def mark_used(self, name: str):
        binding = self.lookup(name)
        if binding:
            binding.used = True

    def values(self) -> Dict[str, int]:
        return {name: b.value for name, b in self.bindings.items()}

    def get_unused(self) -> List[Binding]:
        """Ligaduras que ningún término consultó"""
        return [b for b in self.bindings.values() if not b.used]

    def __contains__(self, name: str) -> bool:
        return name in self.bindings

    def __repr__(self) -> str:
        return f"Environment({sorted(self.bindings)})"
