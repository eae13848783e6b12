"""Exact branch-and-bound over per-demand simple-path choices.

Demands are branched in input order and each demand's paths in
lexicographic order, so the first optimum reached is the one with the
smallest path-index vector. The bound at a node is the support cost of the
demands fixed so far; adding a demand never lowers it.
"""
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from greenroute.core.config import get_settings
from greenroute.core.errors import Infeasible
from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.solution import RouterPath, SolveResult, SolveStatus
from greenroute.services.formulation.builders import Variant
from greenroute.services.solver.paths import enumerate_paths, router_graph
from greenroute.services.solver.support import assemble_solution, derive_support

logger = get_logger(__name__)

Candidate = Tuple[Fraction, Tuple[int, ...]]


class _BudgetExhausted(Exception):
    pass


class SearchState:
    """Node counter and incumbent shared by every worker of one solve."""

    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0
        self.best: Optional[Candidate] = None
        self.exhausted = False
        self._lock = threading.Lock()

    def charge(self) -> bool:
        with self._lock:
            if self.nodes >= self.budget:
                self.exhausted = True
                return False
            self.nodes += 1
            return True

    def bound(self) -> Optional[Fraction]:
        with self._lock:
            return None if self.best is None else self.best[0]

    def offer(self, candidate: Candidate) -> None:
        with self._lock:
            if self.best is None or candidate < self.best:
                self.best = candidate
                logger.debug(f"New incumbent {candidate[0]} at {list(candidate[1])} after {self.nodes} nodes")


def choose_paths(
    instance: Instance, max_paths: int, strict: bool = True
) -> List[List[RouterPath]]:
    """Enumerated paths of every demand over one shared router graph."""
    graph = router_graph(instance)
    return [
        enumerate_paths(instance, d, max_paths, graph=graph, strict=strict)
        for d in range(instance.demand_count)
    ]


class BranchAndBoundSolver:
    """Exact minimiser for one instance and variant."""

    def __init__(
        self,
        instance: Instance,
        variant: Variant,
        budget: Optional[int] = None,
        threads: Optional[int] = None,
        max_paths: Optional[int] = None,
    ):
        settings = get_settings()
        self.instance = instance
        self.variant = Variant(variant)
        self.budget = settings.DEFAULT_BUDGET if budget is None else budget
        self.threads = settings.THREADS if threads is None else threads
        self.max_paths = settings.MAX_PATHS if max_paths is None else max_paths
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        self.paths: List[List[RouterPath]] = []

    def _routing(self, choice: Sequence[int]) -> List[Tuple[int, ...]]:
        return [self.paths[d][index].links for d, index in enumerate(choice)]

    def _explore(self, choice: List[int], search: SearchState, best: Optional[Candidate]) -> Optional[Candidate]:
        """Depth-first search below ``choice``; returns the subtree-local incumbent.

        Prunes on cost strictly above the shared incumbent and on cost at or
        above the local one, which keeps the lexicographic tie-break exact when
        subtrees run concurrently.
        """
        if not search.charge():
            raise _BudgetExhausted
        try:
            support = derive_support(self.instance, self._routing(choice), self.variant)
        except Infeasible:
            return best
        shared = search.bound()
        if shared is not None and support.cost > shared:
            return best
        if best is not None and support.cost >= best[0]:
            return best
        if len(choice) == self.instance.demand_count:
            candidate = (support.cost, tuple(choice))
            search.offer(candidate)
            return candidate
        for index in range(len(self.paths[len(choice)])):
            best = self._explore(choice + [index], search, best)
        return best

    def _explore_subtree(self, first: int, search: SearchState) -> None:
        try:
            self._explore([first], search, None)
        except _BudgetExhausted:
            pass

    def _search(self, search: SearchState) -> None:
        if self.threads == 1 or self.instance.demand_count == 0:
            try:
                self._explore([], search, None)
            except _BudgetExhausted:
                pass
            return
        if not search.charge():
            return
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            futures = [
                executor.submit(self._explore_subtree, first, search)
                for first in range(len(self.paths[0]))
            ]
            for future in futures:
                future.result()

    def solve(self) -> SolveResult:
        self.paths = choose_paths(self.instance, self.max_paths, strict=True)
        unreachable = [d for d, options in enumerate(self.paths) if not options]
        if unreachable:
            logger.info(f"Demand d={unreachable[0] + 1} has no path; instance is infeasible")
            return SolveResult(solution=None, status=SolveStatus.INFEASIBLE)

        search = SearchState(self.budget)
        self._search(search)

        if search.best is None:
            status = SolveStatus.BUDGET_EXCEEDED if search.exhausted else SolveStatus.INFEASIBLE
            logger.info(f"No feasible routing found ({status.value}) after {search.nodes} nodes")
            return SolveResult(solution=None, status=status, nodes=search.nodes)

        cost, vector = search.best
        routing = self._routing(vector)
        solution = assemble_solution(self.instance, routing, derive_support(self.instance, routing, self.variant))
        status = SolveStatus.BUDGET_EXCEEDED if search.exhausted else SolveStatus.OPTIMAL
        if status is SolveStatus.BUDGET_EXCEEDED:
            logger.warning(f"Node budget {self.budget} exhausted; returning incumbent {cost}")
        else:
            logger.info(f"{self.variant.value} optimum {cost} after {search.nodes} nodes")
        paths = tuple(self.paths[d][index] for d, index in enumerate(vector))
        if get_settings().DEBUG_CHECKS:
            broken = [path.demand for path in paths if not path.is_valid_for(self.instance)]
            if broken:
                raise ValueError(f"incumbent path of demand d={broken[0] + 1} is not a simple s-t path")
        return SolveResult(solution=solution, status=status, nodes=search.nodes, paths=paths)


def solve_exact(
    instance: Instance,
    variant: Variant = Variant.CORRECTED,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    max_paths: Optional[int] = None,
) -> SolveResult:
    """
    Solve an instance exactly by branch-and-bound over simple paths.

    Args:
        instance: Validated instance
        variant: Corrected or relaxed model
        budget: Node budget; defaults to GREENROUTE_DEFAULT_BUDGET
        threads: Workers over first-demand subtrees; defaults to GREENROUTE_THREADS
        max_paths: Simple paths allowed per demand; defaults to GREENROUTE_MAX_PATHS

    Returns:
        SolveResult with status optimal, infeasible or budget_exceeded. On an
        exhausted budget the solution is the best incumbent, if any.

    Raises:
        PathLimitExceeded: A demand has more than ``max_paths`` simple paths
    """
    return BranchAndBoundSolver(instance, variant, budget, threads, max_paths).solve()
