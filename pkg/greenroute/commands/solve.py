from greenroute.commands.deps import EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_OK, get_instance, write_document
from greenroute.models.solution import SolveStatus
from greenroute.schemas.reports import SolutionReport
from greenroute.schemas.run_config import RunConfig
from greenroute.services.solver.branch_and_bound import solve_exact

_EXIT_CODES = {
    SolveStatus.OPTIMAL: EXIT_OK,
    SolveStatus.INFEASIBLE: EXIT_INFEASIBLE,
    SolveStatus.BUDGET_EXCEEDED: EXIT_BUDGET,
}


def cmd_solve(config: RunConfig) -> int:
    """Solve exactly and write the assignment, objective and status."""
    instance = get_instance(config.instance_path)
    result = solve_exact(instance, config.variant, budget=config.budget, threads=config.threads)
    write_document(SolutionReport.from_result(instance, config.variant.value, result), config.output_path)
    return _EXIT_CODES[result.status]
