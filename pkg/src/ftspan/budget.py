"""Enumeration budgets shared by the exhaustive checkers and exact solvers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class BudgetExceeded(RuntimeError):
    """Raised when an instance is too large for an exhaustive or exact routine."""


@dataclass(frozen=True)
class Budget:
    max_fault_sets: int = 200_000
    max_subset_edges: int = 16
    max_cyclomatic: int = 16
    max_search_nodes: int = 200_000

    def check_fault_sets(self, m: int, f: int) -> int:
        total = sum(comb(m, i) for i in range(min(f, m) + 1))
        if total > self.max_fault_sets:
            raise BudgetExceeded(
                f"{total} fault sets of size <= {f} over {m} edges exceeds budget {self.max_fault_sets}"
            )
        return total

    def check_subsets(self, m: int) -> None:
        if m > self.max_subset_edges:
            raise BudgetExceeded(f"2^{m} edge subsets exceeds budget 2^{self.max_subset_edges}")

    def check_cyclomatic(self, r: int) -> None:
        if r > self.max_cyclomatic:
            raise BudgetExceeded(f"cycle space of dimension {r} exceeds budget {self.max_cyclomatic}")


DEFAULT_BUDGET = Budget()
