"""End-to-end properties over the seeded random instance family."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from greenroute.core.errors import InstanceError
from greenroute.models.linear import Constraint, LinearModel, Relation, x_card
from greenroute.models.solution import Solution, SolveStatus
from greenroute.services.formulation.builders import (
    SYMMETRY_FAMILY,
    Variant,
    build_corrected,
    build_model,
    expected_family_counts,
    expected_variable_count,
)
from greenroute.services.generate.random_instance import generate_instance_file
from greenroute.services.ingest.instance_loader import build_instance, instance_to_file
from greenroute.services.lpexport.reader import parse_lp
from greenroute.services.lpexport.writer import export_lp
from greenroute.services.solver.branch_and_bound import solve_exact
from greenroute.services.solver.oracle import brute_force_oracle
from greenroute.services.validate.checker import OBJECTIVE_ROW, check_solution
from greenroute.services.validate.defects import asymmetric_pairs
from tests.helpers import constraint_names, flip_bit, links_of_demand

SEEDS = range(100)


def seeded(seed: int):
    return build_instance(generate_instance_file(seed))


class TestOracleEquivalence:

    @pytest.mark.parametrize("seed", SEEDS)
    def test_branch_and_bound_matches_oracle(self, seed):
        instance = seeded(seed)
        optimum = {}
        for variant in Variant:
            expected = brute_force_oracle(instance, variant)
            result = solve_exact(instance, variant)
            assert result.status is expected.status
            assert result.solution.objective_value == expected.solution.objective_value
            assert check_solution(instance, result.solution, variant).passed
            optimum[variant] = result.solution.objective_value
        assert optimum[Variant.RELAXED] <= optimum[Variant.CORRECTED]

    @pytest.mark.parametrize("seed", SEEDS)
    def test_corrected_optimum_shape(self, seed):
        """Symmetric states on every pair, and one simple path per demand."""
        instance = seeded(seed)
        result = solve_exact(instance)
        solution = result.solution
        assert asymmetric_pairs(instance, solution) == []
        for path in result.paths:
            assert path.is_valid_for(instance)
            assert links_of_demand(solution, path.demand) == sorted(path.links)

    def test_most_seeds_are_feasible(self):
        statuses = [solve_exact(seeded(seed)).status for seed in SEEDS]
        assert statuses.count(SolveStatus.OPTIMAL) >= 90


class TestSymmetryRows:

    @pytest.mark.parametrize("seed", range(10))
    def test_rows_hold_exactly_when_pairs_agree(self, seed):
        instance = seeded(seed)
        rows = [row for row in build_corrected(instance).constraints if row.family == SYMMETRY_FAMILY]
        rng = np.random.default_rng(seed)
        for draw in range(100):
            y = rng.integers(0, 2, size=(instance.link_count, instance.state_count))
            if draw % 2:
                for pair in instance.edge_pairs:
                    y[pair.reverse] = y[pair.forward]
            solution = Solution(
                x=(0,) * instance.card_count,
                y=tuple(tuple(int(bit) for bit in row) for row in y),
                z=(0,) * instance.router_count,
                u=((0,) * instance.demand_count,) * instance.link_count,
                objective_value=Fraction(0),
            )
            values = solution.values()
            agree = all((y[pair.forward] == y[pair.reverse]).all() for pair in instance.edge_pairs)
            assert all(row.is_satisfied(values) for row in rows) == agree


class TestMutationSuite:

    @pytest.mark.parametrize("seed", range(20))
    def test_single_bit_flips(self, seed):
        instance = seeded(seed)
        model = build_corrected(instance)
        optimum = solve_exact(instance).solution
        coefficients = {variable: coefficient for coefficient, variable in model.objective}
        for variable in model.variables:
            stale = flip_bit(optimum, variable)
            values = stale.values()
            fresh = stale.model_copy(update={"objective_value": model.objective_value(values)})

            report = check_solution(instance, fresh)
            assert report.passed == all(row.is_satisfied(values) for row in model.constraints)
            if report.passed:
                assert fresh.objective_value >= optimum.objective_value
            else:
                assert set(report.violated_names()) <= set(constraint_names(model))

            stale_names = check_solution(instance, stale).violated_names()
            assert (OBJECTIVE_ROW in stale_names) == (coefficients.get(variable, 0) != 0)


class TestCountIdentities:

    @pytest.mark.parametrize("seed", SEEDS)
    def test_closed_forms(self, seed):
        instance = seeded(seed)
        for variant in Variant:
            model = build_model(instance, variant)
            assert len(model.variables) == expected_variable_count(instance)
            assert model.family_counts() == expected_family_counts(instance, variant)


class TestLpRoundTrip:

    @pytest.mark.parametrize("seed", SEEDS)
    def test_generated_models(self, seed):
        model = build_model(seeded(seed), Variant.RELAXED if seed % 2 else Variant.CORRECTED)
        text = export_lp(model)
        assert parse_lp(text) == model
        assert export_lp(model) == text

    @given(st.data())
    def test_random_models(self, data):
        count = data.draw(st.integers(min_value=1, max_value=6))
        variables = tuple(x_card(c) for c in range(count))
        coefficient = st.fractions(min_value=-20, max_value=20, max_denominator=12)
        nonzero = coefficient.filter(lambda value: value != 0)

        def terms(values):
            chosen = data.draw(st.lists(st.sampled_from(variables), unique=True, max_size=count))
            return tuple((data.draw(values), variable) for variable in chosen)

        rows = tuple(
            Constraint(
                name=f"row[i={i}]",
                terms=terms(nonzero),
                relation=data.draw(st.sampled_from(list(Relation))),
                rhs=data.draw(coefficient),
            )
            for i in range(data.draw(st.integers(min_value=0, max_value=5)))
        )
        model = LinearModel(name="random", variables=variables, objective=terms(coefficient), constraints=rows)
        assert parse_lp(export_lp(model)) == model


class TestRejectionCompleteness:

    @given(
        seed=st.integers(min_value=0, max_value=99),
        link=st.integers(min_value=0, max_value=7),
        field=st.sampled_from(["source_port", "target_port", "drop"]),
        port=st.integers(min_value=0, max_value=40),
    )
    def test_single_link_mutation(self, seed, link, field, port):
        instance = seeded(seed)
        document = instance_to_file(instance).model_dump(mode="json")
        link %= len(document["links"])
        if field == "drop":
            del document["links"][link]
        else:
            port_ids = list(instance.port_ids) + ["p_missing"]
            document["links"][link][field] = port_ids[port % len(port_ids)]
        try:
            build_instance(document)
        except InstanceError as exc:
            assert type(exc) is not InstanceError
            assert exc.error_code != "InstanceError" and exc.detail
