from fractions import Fraction

import pytest

from greenroute.core.errors import DimensionMismatch
from greenroute.models.linear import Relation, y_link_state
from greenroute.schemas.reports import SolutionFile
from greenroute.services.formulation.builders import Variant
from greenroute.services.solver.branch_and_bound import solve_exact
from greenroute.services.validate.checker import OBJECTIVE_ROW, SolutionChecker, check_solution
from tests.helpers import fixture_spec, flip_bit


@pytest.fixture
def t1_optimum(t1):
    return solve_exact(t1).solution


class TestCheckSolution:

    def test_optimum_passes_both_variants(self, t1, t1_optimum):
        assert check_solution(t1, t1_optimum).passed
        assert check_solution(t1, t1_optimum, Variant.RELAXED).passed

    def test_relaxed_optimum_breaks_symmetry(self, t1):
        relaxed = solve_exact(t1, Variant.RELAXED).solution
        report = check_solution(t1, relaxed)
        assert report.violated_names() == ["symmetry[p=p1,k=1]", "symmetry[p=p2,k=1]"]
        assert check_solution(t1, relaxed, Variant.RELAXED).passed

    def test_flipped_state_bit(self, t1, t1_optimum):
        flipped = flip_bit(t1_optimum, y_link_state(1, 0))
        report = check_solution(t1, flipped)
        assert report.violated_names() == ["symmetry[p=p1,k=1]", "symmetry[p=p2,k=1]", OBJECTIVE_ROW]
        objective = report.violations[-1]
        assert objective.lhs == 8 and objective.rhs == 7

    def test_all_zero_assignment(self, t1):
        solution = SolutionFile.model_validate(fixture_spec("allzero.json")).to_solution(t1)
        report = check_solution(t1, solution)
        first = report.violations[0]
        assert first.constraint_name == "flow[d=1,r=r1]"
        assert (first.lhs, first.relation, first.rhs) == (Fraction(0), Relation.EQ, Fraction(1))
        assert report.violated_names() == ["flow[d=1,r=r1]", "flow[d=1,r=r2]"]

    def test_stale_objective(self, t1, t1_optimum):
        stale = t1_optimum.model_copy(update={"objective_value": Fraction(5)})
        report = check_solution(t1, stale)
        assert report.violated_names() == [OBJECTIVE_ROW]

    def test_dimension_mismatch(self, t3, t1_optimum):
        with pytest.raises(DimensionMismatch):
            check_solution(t3, t1_optimum)

    def test_checker_reuses_its_model(self, t1, t1_optimum):
        checker = SolutionChecker(t1, Variant.RELAXED)
        assert checker.model.name == "relaxed"
        assert checker.check(t1_optimum).variant == "relaxed"


class TestSolutionFile:

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            SolutionFile.model_validate({"assignment": {"x_c0": 2}})

    def test_out_of_range_index(self, t1):
        with pytest.raises(DimensionMismatch):
            SolutionFile(assignment={"x_c5": 1}).to_solution(t1)

    def test_given_objective_is_kept(self, t1):
        solution = SolutionFile(assignment={"z_r0": 1}, objective="3.5").to_solution(t1)
        assert solution.objective_value == Fraction(7, 2)
        assert SolutionFile(assignment={"z_r0": 1}).to_solution(t1).objective_value == 2
