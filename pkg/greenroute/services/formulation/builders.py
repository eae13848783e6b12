"""Objective and constraint families of the corrected routing model.

Rows are emitted family by family in a fixed order: card_out, card_in,
router_activation, single_state, flow, capacity, symmetry. Names use file ids
for routers, cards and ports and 1-based ordinals for links, demands and
states, e.g. ``flow[d=1,r=r1]``.
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from greenroute.core.config import get_settings
from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.linear import (
    Constraint,
    LinearModel,
    Relation,
    Term,
    VariableIndex,
    u_link_demand,
    x_card,
    y_link_state,
    z_router,
)

logger = get_logger(__name__)

ONE = Fraction(1)
ZERO = Fraction(0)

SYMMETRY_FAMILY = "symmetry"


class Variant(str, Enum):
    CORRECTED = "corrected"
    RELAXED = "relaxed"


def make_row(name: str, terms: Iterable[Term], relation: Relation, rhs: Fraction) -> Constraint:
    """Merge repeated variables, drop zero coefficients, keep first-seen order."""
    merged: Dict[VariableIndex, Fraction] = {}
    for coefficient, variable in terms:
        merged[variable] = merged.get(variable, ZERO) + coefficient
    clean = tuple((coefficient, variable) for variable, coefficient in merged.items() if coefficient != 0)
    return Constraint(name=name, terms=clean, relation=relation, rhs=Fraction(rhs))


class FormulationBuilder:
    """Builds the model families for one instance."""

    def __init__(self, instance: Instance):
        self.instance = instance

    def variables(self) -> Tuple[VariableIndex, ...]:
        inst = self.instance
        declared: List[VariableIndex] = [x_card(c) for c in range(inst.card_count)]
        declared += [y_link_state(e, k) for e in range(inst.link_count) for k in range(inst.state_count)]
        declared += [z_router(r) for r in range(inst.router_count)]
        declared += [u_link_demand(e, d) for e in range(inst.link_count) for d in range(inst.demand_count)]
        return tuple(declared)

    def objective(self) -> Tuple[Term, ...]:
        """Link states, then cards, then routers; every coefficient kept."""
        inst = self.instance
        terms: List[Term] = [
            (state.power, y_link_state(e, k))
            for e, states in enumerate(inst.link_states)
            for k, state in enumerate(states)
        ]
        terms += [(power, x_card(c)) for c, power in enumerate(inst.card_power)]
        terms += [(power, z_router(r)) for r, power in enumerate(inst.router_power)]
        return tuple(terms)

    def card_rows(self, outgoing: bool) -> List[Constraint]:
        inst = self.instance
        family = "card_out" if outgoing else "card_in"
        link_of_port = inst.out_link_of_port if outgoing else inst.in_link_of_port
        rows = []
        for d in range(inst.demand_count):
            for c, card_id in enumerate(inst.card_ids):
                terms: List[Term] = [
                    (ONE, u_link_demand(link, d))
                    for link in (link_of_port[p] for p in inst.ports_of_card[c])
                    if link is not None
                ]
                terms.append((-ONE, x_card(c)))
                rows.append(make_row(f"{family}[d={d + 1},c={card_id}]", terms, Relation.LE, ZERO))
        return rows

    def router_activation_rows(self) -> List[Constraint]:
        """x_c <= z_r, only for the router that owns card c."""
        inst = self.instance
        rows = []
        for r, router_id in enumerate(inst.router_ids):
            for c in inst.cards_of_router[r]:
                rows.append(make_row(
                    f"router_activation[r={router_id},c={inst.card_ids[c]}]",
                    [(ONE, x_card(c)), (-ONE, z_router(r))],
                    Relation.LE,
                    ZERO,
                ))
        return rows

    def single_state_rows(self) -> List[Constraint]:
        inst = self.instance
        return [
            make_row(
                f"single_state[e={e + 1}]",
                [(ONE, y_link_state(e, k)) for k in range(inst.state_count)],
                Relation.LE,
                ONE,
            )
            for e in range(inst.link_count)
        ]

    def flow_rows(self) -> List[Constraint]:
        """Router-level balance: +1 at the source, -1 at the target, 0 elsewhere."""
        inst = self.instance
        rows = []
        for d, demand in enumerate(inst.demands):
            for r, router_id in enumerate(inst.router_ids):
                outgoing, incoming = inst.router_links(r)
                terms: List[Term] = [(ONE, u_link_demand(e, d)) for e in outgoing]
                terms += [(-ONE, u_link_demand(e, d)) for e in incoming]
                if r == demand.source:
                    rhs = ONE
                elif r == demand.target:
                    rhs = -ONE
                else:
                    rhs = ZERO
                rows.append(make_row(f"flow[d={d + 1},r={router_id}]", terms, Relation.EQ, rhs))
        return rows

    def capacity_rows(self) -> List[Constraint]:
        """sum_d V_d u_ed - sum_k M_ek y_ek <= 0."""
        inst = self.instance
        rows = []
        for e, states in enumerate(inst.link_states):
            terms: List[Term] = [(demand.volume, u_link_demand(e, d)) for d, demand in enumerate(inst.demands)]
            terms += [(-state.capacity, y_link_state(e, k)) for k, state in enumerate(states)]
            rows.append(make_row(f"capacity[e={e + 1}]", terms, Relation.LE, ZERO))
        return rows

    def symmetry_rows(self) -> List[Constraint]:
        """sum_e a_ep y_ek = sum_e b_ep y_ek for every connected port."""
        inst = self.instance
        rows = []
        for p in inst.connected_ports():
            out_link = inst.out_link_of_port[p]
            in_link = inst.in_link_of_port[p]
            for k in range(inst.state_count):
                rows.append(make_row(
                    f"{SYMMETRY_FAMILY}[p={inst.port_ids[p]},k={k + 1}]",
                    [(ONE, y_link_state(out_link, k)), (-ONE, y_link_state(in_link, k))],
                    Relation.EQ,
                    ZERO,
                ))
        return rows

    def corrected(self) -> LinearModel:
        rows: List[Constraint] = []
        rows += self.card_rows(outgoing=True)
        rows += self.card_rows(outgoing=False)
        rows += self.router_activation_rows()
        rows += self.single_state_rows()
        rows += self.flow_rows()
        rows += self.capacity_rows()
        rows += self.symmetry_rows()
        model = LinearModel(
            name=Variant.CORRECTED.value,
            variables=self.variables(),
            objective=self.objective(),
            constraints=tuple(rows),
        )
        logger.debug(f"Corrected model: {len(model.variables)} variables, {model.family_counts()}")
        return self._verified(model, Variant.CORRECTED)

    def relaxed(self) -> LinearModel:
        model = self.corrected().without_family(SYMMETRY_FAMILY, Variant.RELAXED.value)
        return self._verified(model, Variant.RELAXED)

    def _verified(self, model: LinearModel, variant: Variant) -> LinearModel:
        """With debug checks on, hold the model to the closed-form counts."""
        if not get_settings().DEBUG_CHECKS:
            return model
        if len(model.variables) != expected_variable_count(self.instance):
            raise ValueError(f"{model.name} model declares {len(model.variables)} variables")
        expected = expected_family_counts(self.instance, variant)
        if model.family_counts() != expected:
            raise ValueError(f"{model.name} model rows {model.family_counts()} differ from {expected}")
        return model


def build_objective(instance: Instance) -> List[Term]:
    return list(FormulationBuilder(instance).objective())


def build_corrected(instance: Instance) -> LinearModel:
    return FormulationBuilder(instance).corrected()


def build_relaxed(instance: Instance) -> LinearModel:
    """Corrected model without the symmetry family."""
    return FormulationBuilder(instance).relaxed()


def build_model(instance: Instance, variant: Variant) -> LinearModel:
    if Variant(variant) is Variant.RELAXED:
        return build_relaxed(instance)
    return build_corrected(instance)


def expected_family_counts(instance: Instance, variant: Variant = Variant.CORRECTED) -> Dict[str, int]:
    """Closed-form row counts per family; families with zero rows are omitted."""
    inst = instance
    counts = {
        "card_out": inst.demand_count * inst.card_count,
        "card_in": inst.demand_count * inst.card_count,
        "router_activation": inst.card_count,
        "single_state": inst.link_count,
        "flow": inst.demand_count * inst.router_count,
        "capacity": inst.link_count,
        SYMMETRY_FAMILY: len(inst.connected_ports()) * inst.state_count,
    }
    if Variant(variant) is Variant.RELAXED:
        counts[SYMMETRY_FAMILY] = 0
    return {family: count for family, count in counts.items() if count}


def expected_variable_count(instance: Instance) -> int:
    inst = instance
    return (
        inst.card_count
        + inst.link_count * inst.state_count
        + inst.router_count
        + inst.link_count * inst.demand_count
    )
