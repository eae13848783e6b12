from fractions import Fraction

import pytest

from greenroute.core.errors import Infeasible
from greenroute.services.formulation.builders import Variant, build_corrected
from greenroute.services.solver.support import (
    assemble_solution,
    derive_support,
    link_loads,
)
from tests.helpers import fixture_instance


class TestLinkLoads:

    def test_two_way_loads(self, t1_asym):
        assert link_loads(t1_asym, [(0,), (1,)]) == [Fraction(5), Fraction(50)]

    def test_prefix_routing(self, t1_asym):
        assert link_loads(t1_asym, [(0,)]) == [Fraction(5), Fraction(0)]


class TestDeriveSupport:

    def test_t1_corrected_activates_both_directions(self, t1):
        support = derive_support(t1, [(0,)], Variant.CORRECTED)
        assert support.y == ((1, 0), (1, 0))
        assert support.x == (1, 1) and support.z == (1, 1)
        assert support.cost == 8

    def test_t1_relaxed_leaves_idle_link_off(self, t1):
        support = derive_support(t1, [(0,)], Variant.RELAXED)
        assert support.y == ((1, 0), (0, 0))
        assert support.cost == 7

    def test_corrected_pair_takes_the_larger_load(self, t1_asym):
        support = derive_support(t1_asym, [(0,), (1,)], Variant.CORRECTED)
        assert support.y == ((0, 1), (0, 1))
        assert support.cost == 14

    def test_relaxed_states_follow_each_link(self, t1_asym):
        support = derive_support(t1_asym, [(0,), (1,)], Variant.RELAXED)
        assert support.y == ((1, 0), (0, 1))
        assert support.cost == 11

    def test_nothing_routed(self, t1):
        support = derive_support(t1, [], Variant.CORRECTED)
        assert support.cost == 0
        assert support.x == (0, 0) and support.y == ((0, 0), (0, 0))

    def test_overload_is_infeasible(self):
        instance = fixture_instance("t1_overload.json")
        for variant in Variant:
            with pytest.raises(Infeasible):
                derive_support(instance, [(0,)], variant)

    def test_t3_detour_cost(self, t3):
        assert derive_support(t3, [(5, 3)], Variant.CORRECTED).cost == 10

    def test_debug_checks_reject_broken_routing(self, t1, monkeypatch):
        monkeypatch.setenv("GREENROUTE_DEBUG_CHECKS", "true")
        with pytest.raises(ValueError):
            derive_support(t1, [(1,)], Variant.CORRECTED)


class TestAssembleSolution:

    def test_t1_solution(self, t1):
        routing = [(0,)]
        solution = assemble_solution(t1, routing, derive_support(t1, routing, Variant.CORRECTED))
        assert solution.u == ((1,), (0,))
        assert solution.objective_value == 8
        assert solution.matches(t1)
        assert all(row.is_satisfied(solution.values()) for row in build_corrected(t1).constraints)
