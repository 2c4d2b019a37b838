"""
Presupuestos combinatorios y configuración global del banco de álgebras
"""
from dataclasses import dataclass, replace, asdict
from typing import Any, Dict, Optional


class BudgetExceeded(Exception):
    """Se superó un presupuesto combinatorio configurado"""

    def __init__(self, budget: str, limit: int, requested: Optional[int] = None):
        self.budget = budget
        self.limit = limit
        self.requested = requested
        detail = f" (solicitado: {requested})" if requested is not None else ""
        super().__init__(f"Presupuesto '{budget}' excedido: límite {limit}{detail}")


class PreconditionError(Exception):
    """Una precondición explícita de la operación no se cumple"""
    pass


@dataclass(frozen=True)
class Budgets:
    """Límites por defecto; la CLI los sobrescribe con with_overrides"""
    max_atoms: int = 2 ** 16
    max_matrices: int = 2 ** 20
    max_networks: int = 200_000
    max_states: int = 2_000_000
    max_pair_cases: int = 20_000
    max_blur_tuples: int = 5_000_000
    max_graph_nodes: int = 64
    hyper_width: Optional[int] = None  # None -> n+1
    seed: int = 0

    def with_overrides(self, **overrides: Any) -> "Budgets":
        """Copia con los campos indicados; ignora los valores None"""
        values = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(values) - set(asdict(self))
        if unknown:
            raise ValueError(f"Presupuestos desconocidos: {sorted(unknown)}")
        return replace(self, **values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def check(self, budget: str, requested: int):
        """Lanza BudgetExceeded si requested supera el límite nombrado"""
        limit = getattr(self, budget)
        if requested > limit:
            raise BudgetExceeded(budget, limit, requested)


DEFAULT_BUDGETS = Budgets()
