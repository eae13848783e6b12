"""Assignments, solver results and check/defect reports."""
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from greenroute.models.instance import EdgePair, Instance
from greenroute.models.linear import (
    Relation,
    StructuralDefect,
    VariableIndex,
    u_link_demand,
    x_card,
    y_link_state,
    z_router,
)

Bits = Tuple[int, ...]


def _check_bits(values: Tuple[int, ...]) -> Tuple[int, ...]:
    if any(value not in (0, 1) for value in values):
        raise ValueError("assignment entries must be 0 or 1")
    return values


class Solution(BaseModel):
    """Full binary assignment and its objective value.

    ``y`` is link x state and ``u`` is link x demand. Solvers always set
    ``objective_value`` from the objective terms; the checker recomputes it.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Bits
    y: Tuple[Bits, ...]
    z: Bits
    u: Tuple[Bits, ...]
    objective_value: Fraction

    @field_validator("x", "z")
    @classmethod
    def _binary_vector(cls, values: Bits) -> Bits:
        return _check_bits(values)

    @field_validator("y", "u")
    @classmethod
    def _binary_matrix(cls, rows: Tuple[Bits, ...]) -> Tuple[Bits, ...]:
        for row in rows:
            _check_bits(row)
        return rows

    def values(self) -> Dict[VariableIndex, int]:
        """Assignment keyed by variable."""
        values: Dict[VariableIndex, int] = {}
        for c, bit in enumerate(self.x):
            values[x_card(c)] = bit
        for e, row in enumerate(self.y):
            for k, bit in enumerate(row):
                values[y_link_state(e, k)] = bit
        for r, bit in enumerate(self.z):
            values[z_router(r)] = bit
        for e, row in enumerate(self.u):
            for d, bit in enumerate(row):
                values[u_link_demand(e, d)] = bit
        return values

    def matches(self, instance: Instance) -> bool:
        if len(self.x) != instance.card_count or len(self.z) != instance.router_count:
            return False
        if len(self.y) != instance.link_count or len(self.u) != instance.link_count:
            return False
        return all(len(row) == instance.state_count for row in self.y) and all(
            len(row) == instance.demand_count for row in self.u
        )


class RouterPath(BaseModel):
    """Simple router-level path of one demand, as directed link ids."""
    model_config = ConfigDict(frozen=True)

    demand: int
    links: Tuple[int, ...]

    def routers(self, instance: Instance) -> List[int]:
        if not self.links:
            return []
        visited = [instance.link_endpoints(self.links[0])[0]]
        for link in self.links:
            visited.append(instance.link_endpoints(link)[1])
        return visited

    def is_valid_for(self, instance: Instance) -> bool:
        """Chains head to tail from s_d to t_d without repeating a router."""
        if not self.links:
            return False
        demand = instance.demands[self.demand]
        previous_head = demand.source
        for link in self.links:
            tail, head = instance.link_endpoints(link)
            if tail != previous_head:
                return False
            previous_head = head
        routers = self.routers(instance)
        return previous_head == demand.target and len(set(routers)) == len(routers)


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget_exceeded"


class SolveResult(BaseModel):
    """Outcome of an exact solve; ``solution`` is the best incumbent, if any."""
    model_config = ConfigDict(frozen=True)

    solution: Optional[Solution]
    status: SolveStatus
    nodes: int = 0
    paths: Tuple[RouterPath, ...] = ()


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    constraint_name: str
    lhs: Fraction
    relation: Relation
    rhs: Fraction


class CheckReport(BaseModel):
    """Per-row verdict of a solution against one model variant."""
    model_config = ConfigDict(frozen=True)

    variant: str
    violations: Tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def violated_names(self) -> List[str]:
        return [violation.constraint_name for violation in self.violations]


class SymmetryGap(BaseModel):
    """Objective difference between the corrected and relaxed optima."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    corrected_objective: Fraction
    relaxed_objective: Fraction
    gap: Fraction
    witness_solution: Solution
    asymmetric_pairs: Tuple[EdgePair, ...]

    @model_validator(mode="after")
    def _gap_consistent(self) -> "SymmetryGap":
        if self.gap != self.corrected_objective - self.relaxed_objective or self.gap < 0:
            raise ValueError("gap must equal corrected - relaxed and be non-negative")
        return self


class DefectReport(BaseModel):
    """Witnesses of both defects of the original model on one instance."""
    model_config = ConfigDict(frozen=True)

    error1: Tuple[StructuralDefect, ...]
    error2: Optional[SymmetryGap]

    @model_validator(mode="after")
    def _error2_only_with_gap(self) -> "DefectReport":
        if self.error2 is not None and self.error2.gap <= 0:
            raise ValueError("error2 is reported only for a strictly positive gap")
        return self
