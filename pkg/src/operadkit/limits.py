"""Enumeration budgets shared by all exhaustive search routines."""

from __future__ import annotations

from dataclasses import dataclass, replace


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class Caps:
    """Caps for exhaustive enumerations.

    ``max_vertices`` and ``max_weight`` bound the label set and the weight
    range of graph-like enumerations.  ``max_candidates`` bounds the number of
    raw candidates a filter-style enumeration may visit, ``max_cells`` the
    total number of cells/simplices a complex may hold, and ``max_patterns``
    the size of the coordinate-pattern search space used by the geometric
    realisability oracle.
    """

    max_vertices: int = 5
    max_weight: int = 4
    max_candidates: int = 5_000_000
    max_cells: int = 200_000
    max_patterns: int = 100_000

    def check_vertices(self, count: int) -> None:
        if count > self.max_vertices:
            raise BudgetError(
                f"vertex set of size {count} exceeds cap {self.max_vertices}"
            )

    def check_weight(self, n: int) -> None:
        if n > self.max_weight:
            raise BudgetError(f"weight bound {n} exceeds cap {self.max_weight}")

    def check_candidates(self, count: int) -> None:
        if count > self.max_candidates:
            raise BudgetError(
                f"{count} enumeration candidates exceed cap {self.max_candidates}"
            )

    def check_cells(self, count: int) -> None:
        if count > self.max_cells:
            raise BudgetError(f"{count} cells exceed cap {self.max_cells}")

    def check_patterns(self, count: int) -> None:
        if count > self.max_patterns:
            raise BudgetError(
                f"{count} coordinate patterns exceed cap {self.max_patterns}"
            )

    def scaled(self, **kwargs: int) -> "Caps":
        return replace(self, **kwargs)


DEFAULT_CAPS = Caps()
