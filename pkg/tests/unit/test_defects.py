import pytest

from greenroute.core.errors import BudgetExceeded, Infeasible
from greenroute.models.instance import EdgePair
from greenroute.services.formulation.literal import ENDPOINT_FAMILY, TRANSIT_FAMILY
from greenroute.services.solver.branch_and_bound import solve_exact
from greenroute.services.validate.checker import check_solution
from greenroute.services.validate.defects import asymmetric_pairs, demonstrate_defects, symmetry_gap
from tests.helpers import fixture_instance, t1_with_demands


class TestSymmetryGap:

    def test_t1(self, t1):
        gap = symmetry_gap(t1)
        assert (gap.corrected_objective, gap.relaxed_objective, gap.gap) == (8, 7, 1)

    def test_t1_asym_witness(self, t1_asym):
        gap = symmetry_gap(t1_asym)
        assert (gap.corrected_objective, gap.relaxed_objective, gap.gap) == (14, 11, 3)
        assert gap.asymmetric_pairs == (EdgePair(forward=0, reverse=1, port_a=0, port_b=1),)
        assert not check_solution(t1_asym, gap.witness_solution).passed

    def test_balanced_demands_close_the_gap(self):
        instance = t1_with_demands(("r1", "r2", 5), ("r2", "r1", 5))
        gap = symmetry_gap(instance)
        assert gap.gap == 0
        assert gap.corrected_objective == 8
        assert gap.asymmetric_pairs == ()

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            symmetry_gap(fixture_instance("t1_overload.json"))

    def test_budget(self, t1):
        with pytest.raises(BudgetExceeded):
            symmetry_gap(t1, budget=1)


class TestAsymmetricPairs:

    def test_symmetric_optimum(self, t1):
        assert asymmetric_pairs(t1, solve_exact(t1).solution) == []


class TestDemonstrateDefects:

    def test_t1_asym_reports_both(self, t1_asym):
        report = demonstrate_defects(t1_asym)
        assert {defect.family for defect in report.error1} == {TRANSIT_FAMILY, ENDPOINT_FAMILY}
        assert report.error2 is not None and report.error2.gap == 3

    def test_no_gap_means_no_error2(self):
        report = demonstrate_defects(t1_with_demands(("r1", "r2", 5), ("r2", "r1", 5)))
        assert report.error1
        assert report.error2 is None

    def test_empty_instance(self, empty_instance):
        report = demonstrate_defects(empty_instance)
        assert report.error1 == ()
        assert report.error2 is None
