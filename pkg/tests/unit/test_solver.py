import pytest

from greenroute.core.errors import OracleTooLarge, PathLimitExceeded
from greenroute.models.solution import RouterPath, SolveStatus
from greenroute.services.formulation.builders import Variant
from greenroute.services.generate.random_instance import generate_instance_file
from greenroute.services.ingest.instance_loader import build_instance
from greenroute.services.solver.branch_and_bound import BranchAndBoundSolver, SearchState, solve_exact
from greenroute.services.solver.oracle import brute_force_oracle
from tests.helpers import fixture_instance, fixture_spec, links_of_demand


class TestSearchState:

    def test_charge_stops_at_budget(self):
        search = SearchState(budget=2)
        assert search.charge() and search.charge()
        assert not search.charge()
        assert search.exhausted and search.nodes == 2

    def test_offer_keeps_the_smaller_candidate(self):
        search = SearchState(budget=10)
        search.offer((8, (1, 0)))
        search.offer((8, (0, 1)))
        search.offer((9, (0, 0)))
        assert search.best == (8, (0, 1))
        assert search.bound() == 8


class TestSolveExact:

    def test_t1_corrected(self, t1):
        result = solve_exact(t1)
        assert result.status is SolveStatus.OPTIMAL
        assert result.solution.objective_value == 8
        assert [p.links for p in result.paths] == [(0,)]

    def test_t1_relaxed(self, t1):
        result = solve_exact(t1, Variant.RELAXED)
        assert result.solution.objective_value == 7
        assert result.solution.y == ((1, 0), (0, 0))

    def test_t1_asym(self, t1_asym):
        assert solve_exact(t1_asym).solution.objective_value == 14
        assert solve_exact(t1_asym, Variant.RELAXED).solution.objective_value == 11

    def test_t3_prefers_direct_link(self, t3):
        result = solve_exact(t3)
        assert result.solution.objective_value == 6
        assert links_of_demand(result.solution, 0) == [0]

    def test_no_demands(self, empty_instance):
        result = solve_exact(empty_instance)
        assert result.status is SolveStatus.OPTIMAL
        assert result.solution.objective_value == 0
        assert set(result.solution.values().values()) == {0}
        assert result.nodes == 1

    def test_overload_is_infeasible(self):
        result = solve_exact(fixture_instance("t1_overload.json"))
        assert result.status is SolveStatus.INFEASIBLE
        assert result.solution is None

    def test_unreachable_is_infeasible(self):
        spec = fixture_spec("t1.json")
        spec["edges"] = []
        result = solve_exact(build_instance(spec))
        assert result.status is SolveStatus.INFEASIBLE
        assert result.nodes == 0

    def test_budget_without_incumbent(self, t1):
        result = solve_exact(t1, budget=1)
        assert result.status is SolveStatus.BUDGET_EXCEEDED
        assert result.solution is None

    def test_budget_keeps_incumbent(self, t3):
        """Root and the first leaf fit in the budget; the detour is never visited."""
        result = solve_exact(t3, budget=2)
        assert result.status is SolveStatus.BUDGET_EXCEEDED
        assert result.solution.objective_value == 6
        assert result.nodes == 2

    def test_invalid_arguments(self, t1):
        with pytest.raises(ValueError):
            BranchAndBoundSolver(t1, Variant.CORRECTED, budget=0)
        with pytest.raises(ValueError):
            BranchAndBoundSolver(t1, Variant.CORRECTED, threads=0)

    def test_path_cap_from_environment(self, t3, monkeypatch):
        monkeypatch.setenv("GREENROUTE_MAX_PATHS", "1")
        with pytest.raises(PathLimitExceeded):
            solve_exact(t3)

    def test_debug_checks_accept_the_optimum(self, t3, monkeypatch):
        monkeypatch.setenv("GREENROUTE_DEBUG_CHECKS", "true")
        assert solve_exact(t3).solution.objective_value == 6

    def test_debug_checks_reject_a_broken_path(self, t1, monkeypatch, mocker):
        monkeypatch.setenv("GREENROUTE_DEBUG_CHECKS", "true")
        mocker.patch.object(RouterPath, "is_valid_for", return_value=False)
        with pytest.raises(ValueError, match="d=1"):
            solve_exact(t1)

    def test_deterministic(self, t3):
        assert solve_exact(t3) == solve_exact(t3)

    @pytest.mark.parametrize("seed", range(15))
    def test_threads_match_sequential(self, seed):
        instance = build_instance(generate_instance_file(seed))
        for variant in Variant:
            sequential = solve_exact(instance, variant, threads=1)
            threaded = solve_exact(instance, variant, threads=4)
            assert threaded.status is SolveStatus.OPTIMAL
            assert threaded.solution == sequential.solution
            assert threaded.paths == sequential.paths


class TestOracle:

    def test_t1(self, t1):
        result = brute_force_oracle(t1)
        assert result.solution.objective_value == 8
        assert result.nodes == 1

    def test_overload(self):
        assert brute_force_oracle(fixture_instance("t1_overload.json")).status is SolveStatus.INFEASIBLE

    def test_limit(self, t3):
        with pytest.raises(OracleTooLarge):
            brute_force_oracle(t3, limit=1)

    @pytest.mark.parametrize("seed", range(30))
    def test_agrees_with_branch_and_bound(self, seed):
        instance = build_instance(generate_instance_file(seed))
        for variant in Variant:
            expected = brute_force_oracle(instance, variant)
            result = solve_exact(instance, variant)
            assert result.status is expected.status is SolveStatus.OPTIMAL
            assert result.solution == expected.solution
