"""Row-by-row feasibility check of an assignment against a generated model."""
from typing import List

from greenroute.core.errors import DimensionMismatch
from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.linear import LinearModel, Relation
from greenroute.models.solution import CheckReport, Solution, Violation
from greenroute.services.formulation.builders import Variant, build_model

logger = get_logger(__name__)

OBJECTIVE_ROW = "objective[]"


class SolutionChecker:
    """Evaluates every row of one variant's model; nothing is re-implemented by hand."""

    def __init__(self, instance: Instance, variant: Variant = Variant.CORRECTED):
        self.instance = instance
        self.variant = Variant(variant)
        self.model: LinearModel = build_model(instance, self.variant)

    def _check_dimensions(self, solution: Solution) -> None:
        if not solution.matches(self.instance):
            inst = self.instance
            raise DimensionMismatch(
                f"solution shape x={len(solution.x)} z={len(solution.z)} y={len(solution.y)} "
                f"u={len(solution.u)} does not match C={inst.card_count} R={inst.router_count} "
                f"E={inst.link_count} K={inst.state_count} D={inst.demand_count}"
            )

    def check(self, solution: Solution) -> CheckReport:
        self._check_dimensions(solution)
        values = solution.values()
        violations: List[Violation] = []
        for row in self.model.constraints:
            lhs = row.lhs(values)
            if not row.relation.holds(lhs, row.rhs):
                violations.append(Violation(constraint_name=row.name, lhs=lhs, relation=row.relation, rhs=row.rhs))

        recomputed = self.model.objective_value(values)
        if recomputed != solution.objective_value:
            violations.append(Violation(
                constraint_name=OBJECTIVE_ROW,
                lhs=solution.objective_value,
                relation=Relation.EQ,
                rhs=recomputed,
            ))

        if violations:
            logger.debug(f"{len(violations)} violations against the {self.variant.value} model")
        return CheckReport(variant=self.variant.value, violations=tuple(violations))


def check_solution(instance: Instance, solution: Solution, variant: Variant = Variant.CORRECTED) -> CheckReport:
    """
    Check a solution against every row of a model variant.

    Args:
        instance: Instance the solution was made for
        solution: Candidate assignment with its claimed objective value
        variant: Model whose rows are checked

    Returns:
        CheckReport listing each violated row in model order, plus an
        ``objective[]`` entry when the claimed objective is stale

    Raises:
        DimensionMismatch: The solution was shaped for another instance
    """
    return SolutionChecker(instance, variant).check(solution)
