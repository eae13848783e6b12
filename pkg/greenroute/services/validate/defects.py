"""Witnesses for the two defects of the original model.

The first is structural (its flow rows cannot be instantiated); the second
is the objective gap that opens when the per-edge state coupling is dropped.
"""
from typing import List, Optional

from greenroute.core.errors import BudgetExceeded, Infeasible
from greenroute.core.logging import get_logger
from greenroute.models.instance import EdgePair, Instance
from greenroute.models.solution import DefectReport, Solution, SolveResult, SolveStatus, SymmetryGap
from greenroute.services.formulation.builders import Variant
from greenroute.services.formulation.literal import build_original_literal
from greenroute.services.solver.branch_and_bound import solve_exact

logger = get_logger(__name__)


def _optimal(result: SolveResult, variant: Variant) -> Solution:
    if result.status is SolveStatus.INFEASIBLE:
        raise Infeasible(f"the {variant.value} model has no feasible solution")
    if result.status is SolveStatus.BUDGET_EXCEEDED or result.solution is None:
        raise BudgetExceeded(f"the {variant.value} model was not solved to optimality within the node budget")
    return result.solution


def asymmetric_pairs(instance: Instance, solution: Solution) -> List[EdgePair]:
    """Edge pairs whose two links sit in different states."""
    return [pair for pair in instance.edge_pairs if solution.y[pair.forward] != solution.y[pair.reverse]]


def symmetry_gap(
    instance: Instance, budget: Optional[int] = None, threads: Optional[int] = None
) -> SymmetryGap:
    """Corrected minus relaxed optimum, with the relaxed optimum as witness."""
    corrected = _optimal(solve_exact(instance, Variant.CORRECTED, budget=budget, threads=threads), Variant.CORRECTED)
    relaxed = _optimal(solve_exact(instance, Variant.RELAXED, budget=budget, threads=threads), Variant.RELAXED)
    gap = corrected.objective_value - relaxed.objective_value
    logger.info(f"Symmetry gap {gap} (corrected {corrected.objective_value}, relaxed {relaxed.objective_value})")
    return SymmetryGap(
        corrected_objective=corrected.objective_value,
        relaxed_objective=relaxed.objective_value,
        gap=gap,
        witness_solution=relaxed,
        asymmetric_pairs=tuple(asymmetric_pairs(instance, relaxed)),
    )


def demonstrate_defects(
    instance: Instance, budget: Optional[int] = None, threads: Optional[int] = None
) -> DefectReport:
    reading = build_original_literal(instance)
    gap = symmetry_gap(instance, budget=budget, threads=threads)
    return DefectReport(error1=reading.defects, error2=gap if gap.gap > 0 else None)
