"""Exhaustive reference solver used to cross-check branch-and-bound."""
import itertools
import math
from typing import Optional

from greenroute.core.config import get_settings
from greenroute.core.errors import Infeasible, OracleTooLarge
from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.solution import SolveResult, SolveStatus
from greenroute.services.formulation.builders import Variant
from greenroute.services.solver.branch_and_bound import Candidate, choose_paths
from greenroute.services.solver.support import assemble_solution, derive_support

logger = get_logger(__name__)


def brute_force_oracle(
    instance: Instance,
    variant: Variant = Variant.CORRECTED,
    limit: Optional[int] = None,
    max_paths: Optional[int] = None,
) -> SolveResult:
    """Evaluate every combination of enumerated paths and keep the cheapest.

    Ties go to the lexicographically smallest path-index vector, the same
    rule branch-and-bound applies.
    """
    settings = get_settings()
    limit = settings.ORACLE_LIMIT if limit is None else limit
    paths = choose_paths(instance, settings.MAX_PATHS if max_paths is None else max_paths)

    combinations = math.prod(len(options) for options in paths)
    if combinations > limit:
        raise OracleTooLarge(f"{combinations} path combinations exceed the oracle limit of {limit}")

    best: Optional[Candidate] = None
    for vector in itertools.product(*(range(len(options)) for options in paths)):
        routing = [paths[d][index].links for d, index in enumerate(vector)]
        try:
            support = derive_support(instance, routing, variant)
        except Infeasible:
            continue
        if best is None or support.cost < best[0]:
            best = (support.cost, tuple(vector))

    if best is None:
        return SolveResult(solution=None, status=SolveStatus.INFEASIBLE, nodes=combinations)

    routing = [paths[d][index].links for d, index in enumerate(best[1])]
    solution = assemble_solution(instance, routing, derive_support(instance, routing, variant))
    logger.debug(f"Oracle {Variant(variant).value} optimum {best[0]} over {combinations} combinations")
    return SolveResult(
        solution=solution,
        status=SolveStatus.OPTIMAL,
        nodes=combinations,
        paths=tuple(paths[d][index] for d, index in enumerate(best[1])),
    )
