"""Cheapest card, router and link-state activation for a fixed routing."""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from greenroute.core.config import get_settings
from greenroute.core.errors import Infeasible
from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.linear import evaluate_terms, u_link_demand
from greenroute.models.solution import Solution
from greenroute.services.formulation.builders import FormulationBuilder, Variant, build_objective

logger = get_logger(__name__)

Routing = Sequence[Sequence[int]]


@dataclass(frozen=True)
class Support:
    """Activation derived from a routing, with its exact cost."""
    x: Tuple[int, ...]
    z: Tuple[int, ...]
    y: Tuple[Tuple[int, ...], ...]
    cost: Fraction


def link_loads(instance: Instance, routing: Routing) -> List[Fraction]:
    """Total volume on every link; ``routing[d]`` lists the links of demand d."""
    loads = [Fraction(0)] * instance.link_count
    for d, links in enumerate(routing):
        volume = instance.demands[d].volume
        for link in links:
            loads[link] += volume
    return loads


def _cheapest_state(
    instance: Instance, links: Sequence[int], loads: Sequence[Fraction]
) -> Optional[int]:
    """Smallest-cost state carrying every given load at once; ties go to the lowest k."""
    best: Optional[Tuple[Fraction, int]] = None
    for k in range(instance.state_count):
        states = [instance.link_states[link][k] for link in links]
        if all(state.capacity >= loads[link] for state, link in zip(states, links)):
            candidate = (sum((state.power for state in states), Fraction(0)), k)
            if best is None or candidate < best:
                best = candidate
    return None if best is None else best[1]


def _check_flow(instance: Instance, routing: Routing) -> None:
    values = {
        u_link_demand(link, d): 1
        for d, links in enumerate(routing)
        for link in links
    }
    for row in FormulationBuilder(instance).flow_rows():
        if not row.is_satisfied(values):
            raise ValueError(f"routing violates {row.name}")


def derive_support(instance: Instance, routing: Routing, variant: Variant) -> Support:
    """
    Cheapest card, router and link-state bits that carry a routing.

    Args:
        instance: Validated instance
        routing: Link ids per demand, possibly for a prefix of the demands
        variant: Corrected variant picks one common state per edge; relaxed
            picks per link

    Returns:
        Support with x, z, y and the objective cost of those bits

    Raises:
        Infeasible: No state of some used link (or edge) covers its load
    """
    if get_settings().DEBUG_CHECKS and len(routing) == instance.demand_count:
        _check_flow(instance, routing)

    loads = link_loads(instance, routing)
    used = [False] * instance.link_count
    for links in routing:
        for link in links:
            used[link] = True

    x = [0] * instance.card_count
    for link in range(instance.link_count):
        if used[link]:
            x[instance.card_of_port[instance.source_port_of_link[link]]] = 1
            x[instance.card_of_port[instance.target_port_of_link[link]]] = 1
    z = [0] * instance.router_count
    for card, active in enumerate(x):
        if active:
            z[instance.router_of_card[card]] = 1

    y = [[0] * instance.state_count for _ in range(instance.link_count)]
    if Variant(variant) is Variant.CORRECTED:
        for pair in instance.edge_pairs:
            if not (used[pair.forward] or used[pair.reverse]):
                continue
            k = _cheapest_state(instance, (pair.forward, pair.reverse), loads)
            if k is None:
                forward = instance.link_label(pair.forward)
                reverse = instance.link_label(pair.reverse)
                raise Infeasible(
                    f"no common state of links {forward} and {reverse} "
                    f"carries loads {loads[pair.forward]} / {loads[pair.reverse]}"
                )
            y[pair.forward][k] = 1
            y[pair.reverse][k] = 1
    else:
        for link in range(instance.link_count):
            if not used[link]:
                continue
            k = _cheapest_state(instance, (link,), loads)
            if k is None:
                raise Infeasible(
                    f"no state of link {instance.link_label(link)} carries load {loads[link]}"
                )
            y[link][k] = 1

    cost = sum(
        (
            instance.link_states[e][k].power
            for e in range(instance.link_count)
            for k in range(instance.state_count)
            if y[e][k]
        ),
        Fraction(0),
    )
    cost += sum((power for power, bit in zip(instance.card_power, x) if bit), Fraction(0))
    cost += sum((power for power, bit in zip(instance.router_power, z) if bit), Fraction(0))
    return Support(x=tuple(x), z=tuple(z), y=tuple(tuple(row) for row in y), cost=cost)


def assemble_solution(instance: Instance, routing: Routing, support: Support) -> Solution:
    """Full assignment for a complete routing; the objective is evaluated from the model terms."""
    u = [[0] * instance.demand_count for _ in range(instance.link_count)]
    for d, links in enumerate(routing):
        for link in links:
            u[link][d] = 1
    draft = Solution(
        x=support.x,
        y=support.y,
        z=support.z,
        u=tuple(tuple(row) for row in u),
        objective_value=Fraction(0),
    )
    objective = evaluate_terms(build_objective(instance), draft.values())
    return draft.model_copy(update={"objective_value": objective})