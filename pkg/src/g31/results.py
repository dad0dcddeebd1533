"""Result record shared by the exact searches."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import VertexSet

EXACT = "exact"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class ExactResult:
    """Outcome of an exact search.

    With ``status == "exact"`` the value is optimal.  Otherwise it is the
    best value found before the budget ran out (an upper bound for a
    minimisation, a lower bound for a maximisation) and ``witness`` may be
    ``None`` if nothing was found at all.
    """

    value: int
    witness: VertexSet | None
    status: str
    nodes_explored: int
    elapsed: float

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT

    def as_dict(self, with_witness: bool = True) -> dict:
        d = {"value": self.value, "status": self.status}
        if with_witness:
            d["witness"] = None if self.witness is None else [list(v) for v in self.witness]
        d["nodes_explored"] = self.nodes_explored
        d["elapsed"] = self.elapsed
        return d
