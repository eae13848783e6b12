"""Literal reading of the original port-indexed flow balance rows.

The original model writes three flow families quantified over a fixed port:
a source-port row (``p = s_d``, right side 1), a transit row
(``p != s_d, p != t_d``, right side 0) whose body also sums over ``p``, and a
sink-port row (``p = t_d``, right side -1). Read as written, none of them can
be instantiated into a meaningful router-level balance; this module reports
why, with concrete index witnesses on a given instance. When there is nothing
to quantify (no demands) the original model is materialised instead.
"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from greenroute.core.logging import get_logger
from greenroute.models.instance import Instance
from greenroute.models.linear import Constraint, LinearModel, StructuralDefect
from greenroute.services.formulation.builders import FormulationBuilder

logger = get_logger(__name__)

TRANSIT_FAMILY = "flow-transit"
ENDPOINT_FAMILY = "flow-endpoint"

ORIGINAL_MODEL_NAME = "original"


class LiteralReading(BaseModel):
    """Either the instantiated original model or the defects preventing it."""
    model_config = ConfigDict(frozen=True)

    model: Optional[LinearModel]
    defects: Tuple[StructuralDefect, ...]


def endpoint_port(instance: Instance, router: int) -> Optional[int]:
    """Port fixed by ``p = s_d`` (or ``p = t_d``): the router's first port."""
    for card in instance.cards_of_router[router]:
        ports = instance.ports_of_card[card]
        if ports:
            return ports[0]
    return None


def _transit_defects(instance: Instance) -> List[StructuralDefect]:
    defects = []
    for d, demand in enumerate(instance.demands):
        fixed = {endpoint_port(instance, demand.source), endpoint_port(instance, demand.target)}
        transit_ports = [p for p in range(instance.port_count) if p not in fixed]
        port = transit_ports[0] if transit_ports else 0
        router = instance.router_of_port(port)
        range_note = (
            "" if transit_ports
            else " On this instance the outer range is even empty, so the family has no rows at all."
        )
        defects.append(StructuralDefect(
            family=TRANSIT_FAMILY,
            description=(
                f"Transit balance row for demand d={d + 1} fixes port "
                f"{instance.port_ids[port]} in its quantifier (p != s_d, p != t_d) and sums "
                f"over p again in its body; the bound p shadows the fixed one, so the row "
                f"cannot be instantiated as written.{range_note}"
            ),
            axes=("d", "r", "p"),
            witness=(d, router, port),
        ))
    return defects


def _endpoint_defects(instance: Instance) -> List[StructuralDefect]:
    defects = []
    for d, demand in enumerate(instance.demands):
        source_port = endpoint_port(instance, demand.source)
        for r, router_id in enumerate(instance.router_ids):
            if r == demand.source:
                continue
            if source_port is None:
                fixed = "the source router has no port, so p = s_d names none"
            else:
                fixed = f"the fixed port p = s_d ({instance.port_ids[source_port]}) is not on this router"
            mirrored = ""
            if r != demand.target:
                mirrored = " The sink-port row at the same router likewise reads 0 = -1."
            defects.append(StructuralDefect(
                family=ENDPOINT_FAMILY,
                description=(
                    f"Source-port balance row for demand d={d + 1} at router {router_id}: "
                    f"{fixed}, so every "
                    f"router-card-port product vanishes and the row reads 0 = 1, which no routing satisfies."
                    f"{mirrored}"
                ),
                axes=("d", "r"),
                witness=(d, r),
            ))
    return defects


def _original_model(instance: Instance) -> LinearModel:
    """Original families in their original order; the flow rows are absent."""
    builder = FormulationBuilder(instance)
    rows: List[Constraint] = []
    rows += builder.single_state_rows()
    rows += builder.card_rows(outgoing=True)
    rows += builder.card_rows(outgoing=False)
    rows += builder.router_activation_rows()
    rows += builder.capacity_rows()
    return LinearModel(
        name=ORIGINAL_MODEL_NAME,
        variables=builder.variables(),
        objective=builder.objective(),
        constraints=tuple(rows),
    )


def build_original_literal(instance: Instance) -> LiteralReading:
    """
    Instantiate the original flow rows literally, or report why that fails.

    Args:
        instance: Validated instance

    Returns:
        LiteralReading holding the structural defects found, or the original
        model when there are no demands to quantify over
    """
    defects = _transit_defects(instance) + _endpoint_defects(instance)
    if defects:
        logger.debug(f"Literal reading found {len(defects)} structural defects")
        return LiteralReading(model=None, defects=tuple(defects))
    return LiteralReading(model=_original_model(instance), defects=())
