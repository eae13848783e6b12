"""Turn an instance file into a validated ``Instance``."""
from collections import Counter
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from greenroute.core.errors import (
    AmbiguousPortPairing,
    BadDemand,
    DanglingReference,
    DuplicateIdentifier,
    EmptyHierarchy,
    NegativeParameter,
    PartiallyConnectedPort,
    SelfLoopEdge,
    StateCountMismatch,
)
from greenroute.core.logging import get_logger
from greenroute.core.rational import format_decimal, to_fraction
from greenroute.models.instance import Demand, Instance, StateSpec
from greenroute.schemas.instance_file import (
    CardEntry,
    DemandEntry,
    InstanceFile,
    LinkEntry,
    LinkStateEntry,
    PortEntry,
    RouterEntry,
)

logger = get_logger(__name__)

RawLink = Tuple[str, str, List[StateSpec]]


class InstanceBuilder:
    """Validate a raw description and assemble the dense ``Instance``.

    Checks run in a fixed order and the first failing check raises, so any
    invalid input yields exactly one named error.
    """

    def __init__(self, spec: InstanceFile):
        self.spec = spec
        self.router_ids: List[str] = []
        self.card_ids: List[str] = []
        self.port_ids: List[str] = []
        self.router_of_card: List[int] = []
        self.card_of_port: List[int] = []
        self.card_power: List[Fraction] = []
        self.router_power: List[Fraction] = []

    def build(self) -> Instance:
        self._read_hierarchy()
        self._check_unique_ids()
        self._check_hierarchy_not_empty()
        self._check_hierarchy_powers()

        port_index = {port_id: index for index, port_id in enumerate(self.port_ids)}
        router_index = {router_id: index for index, router_id in enumerate(self.router_ids)}

        raw_links = self._expand_links()
        sources, targets = self._resolve_link_ports(raw_links, port_index)
        state_count = self._check_state_counts(raw_links)
        self._check_link_parameters(raw_links)
        self._check_self_loops(sources, targets)
        out_link, in_link = self._check_port_pairing(sources, targets)
        demands = self._resolve_demands(router_index)

        instance = Instance(
            router_ids=tuple(self.router_ids),
            card_ids=tuple(self.card_ids),
            port_ids=tuple(self.port_ids),
            router_of_card=tuple(self.router_of_card),
            card_of_port=tuple(self.card_of_port),
            out_link_of_port=tuple(out_link),
            in_link_of_port=tuple(in_link),
            state_count=state_count,
            link_states=tuple(tuple(states) for _, _, states in raw_links),
            demands=tuple(demands),
            card_power=tuple(self.card_power),
            router_power=tuple(self.router_power),
        )
        logger.debug(
            f"Built instance R={instance.router_count} C={instance.card_count} "
            f"P={instance.port_count} E={instance.link_count} "
            f"K={instance.state_count} D={instance.demand_count}"
        )
        return instance

    def _read_hierarchy(self) -> None:
        for router in self.spec.routers:
            router_index = len(self.router_ids)
            self.router_ids.append(router.id)
            self.router_power.append(to_fraction(router.power_T))
            for card in router.cards:
                card_index = len(self.card_ids)
                self.card_ids.append(card.id)
                self.router_of_card.append(router_index)
                self.card_power.append(to_fraction(card.power_W))
                for port in card.ports:
                    self.port_ids.append(port.id)
                    self.card_of_port.append(card_index)

    def _check_unique_ids(self) -> None:
        for kind, ids in (("router", self.router_ids), ("card", self.card_ids), ("port", self.port_ids)):
            duplicates = sorted(item for item, count in Counter(ids).items() if count > 1)
            if duplicates:
                raise DuplicateIdentifier(f"duplicate {kind} ids: {', '.join(duplicates)}")

    def _check_hierarchy_not_empty(self) -> None:
        if not self.router_ids or not self.card_ids or not self.port_ids:
            raise EmptyHierarchy(
                f"instance needs at least one router, card and port "
                f"(got R={len(self.router_ids)}, C={len(self.card_ids)}, P={len(self.port_ids)})"
            )

    def _check_hierarchy_powers(self) -> None:
        for router_id, power in zip(self.router_ids, self.router_power):
            if power < 0:
                raise NegativeParameter(f"router {router_id} has negative power {power}")
        for card_id, power in zip(self.card_ids, self.card_power):
            if power < 0:
                raise NegativeParameter(f"card {card_id} has negative power {power}")

    def _expand_links(self) -> List[RawLink]:
        links: List[RawLink] = []
        for edge in self.spec.edges:
            forward = [
                StateSpec(capacity=to_fraction(s.capacity_fwd), power=to_fraction(s.power_fwd))
                for s in edge.states
            ]
            reverse = [
                StateSpec(capacity=to_fraction(s.capacity_rev), power=to_fraction(s.power_rev))
                for s in edge.states
            ]
            links.append((edge.port_a, edge.port_b, forward))
            links.append((edge.port_b, edge.port_a, reverse))
        for link in self.spec.links:
            states = [StateSpec(capacity=to_fraction(s.capacity), power=to_fraction(s.power)) for s in link.states]
            links.append((link.source_port, link.target_port, states))
        return links

    def _resolve_link_ports(
        self, raw_links: List[RawLink], port_index: Mapping[str, int]
    ) -> Tuple[List[int], List[int]]:
        sources: List[int] = []
        targets: List[int] = []
        for number, (source, target, _) in enumerate(raw_links, start=1):
            for port_id in (source, target):
                if port_id not in port_index:
                    raise DanglingReference(f"link e={number} references unknown port {port_id!r}")
            sources.append(port_index[source])
            targets.append(port_index[target])
        return sources, targets

    def _check_state_counts(self, raw_links: List[RawLink]) -> int:
        expected = self.spec.state_count
        if expected is None:
            expected = len(raw_links[0][2]) if raw_links else 1
        if expected < 1:
            raise StateCountMismatch("links need at least one energy state")
        for number, (_, _, states) in enumerate(raw_links, start=1):
            if len(states) != expected:
                raise StateCountMismatch(
                    f"link e={number} has {len(states)} states, expected {expected}"
                )
        return expected

    def _check_link_parameters(self, raw_links: List[RawLink]) -> None:
        for number, (_, _, states) in enumerate(raw_links, start=1):
            for k, state in enumerate(states, start=1):
                if state.capacity < 0 or state.power < 0:
                    raise NegativeParameter(
                        f"link e={number} state k={k} has negative capacity or power"
                    )

    def _check_self_loops(self, sources: List[int], targets: List[int]) -> None:
        for link, (source, target) in enumerate(zip(sources, targets)):
            source_router = self.router_of_card[self.card_of_port[source]]
            target_router = self.router_of_card[self.card_of_port[target]]
            if source_router == target_router:
                raise SelfLoopEdge(
                    f"link e={link + 1} ({self.port_ids[source]}->{self.port_ids[target]}) "
                    f"stays on router {self.router_ids[source_router]}"
                )

    def _check_port_pairing(
        self, sources: List[int], targets: List[int]
    ) -> Tuple[List[Optional[int]], List[Optional[int]]]:
        out_link: List[Optional[int]] = [None] * len(self.port_ids)
        in_link: List[Optional[int]] = [None] * len(self.port_ids)
        for link, (source, target) in enumerate(zip(sources, targets)):
            if out_link[source] is not None:
                raise AmbiguousPortPairing(f"port {self.port_ids[source]} has several outgoing links")
            if in_link[target] is not None:
                raise AmbiguousPortPairing(f"port {self.port_ids[target]} has several incoming links")
            out_link[source] = link
            in_link[target] = link

        partial = [
            self.port_ids[port]
            for port in range(len(self.port_ids))
            if (out_link[port] is None) != (in_link[port] is None)
        ]
        if partial:
            raise PartiallyConnectedPort(partial)

        for port, link in enumerate(out_link):
            reverse = in_link[port]
            if link is None or reverse is None:
                continue
            if sources[reverse] != targets[link]:
                raise AmbiguousPortPairing(
                    f"port {self.port_ids[port]}: outgoing link goes to "
                    f"{self.port_ids[targets[link]]} but incoming link comes from "
                    f"{self.port_ids[sources[reverse]]}"
                )
        return out_link, in_link

    def _resolve_demands(self, router_index: Mapping[str, int]) -> List[Demand]:
        demands: List[Demand] = []
        for number, entry in enumerate(self.spec.demands, start=1):
            for router_id in (entry.source_router, entry.target_router):
                if router_id not in router_index:
                    raise DanglingReference(f"demand d={number} references unknown router {router_id!r}")
            source = router_index[entry.source_router]
            target = router_index[entry.target_router]
            volume = to_fraction(entry.volume)
            if source == target:
                raise BadDemand(f"demand d={number} has source = target = {entry.source_router}")
            if volume <= 0:
                raise BadDemand(f"demand d={number} has non-positive volume {entry.volume}")
            demands.append(Demand(source=source, target=target, volume=volume))
        return demands


def build_instance(spec: Union[InstanceFile, Dict[str, Any]]) -> Instance:
    """Validate a raw description and return the immutable ``Instance``."""
    if not isinstance(spec, InstanceFile):
        spec = InstanceFile.model_validate(spec)
    return InstanceBuilder(spec).build()


def load_instance_file(path: Union[str, Path]) -> InstanceFile:
    """Read and schema-check an instance file (raises ``ValidationError``/``OSError``)."""
    text = Path(path).read_text(encoding="utf-8")
    return InstanceFile.model_validate_json(text)


def instance_to_file(instance: Instance) -> InstanceFile:
    """Directed-link form of ``instance``; ``build_instance`` of it is equal to it."""
    routers = []
    for router, router_id in enumerate(instance.router_ids):
        cards = [
            CardEntry(
                id=instance.card_ids[card],
                power_W=_decimal(instance.card_power[card]),
                ports=[PortEntry(id=instance.port_ids[port]) for port in instance.ports_of_card[card]],
            )
            for card in instance.cards_of_router[router]
        ]
        routers.append(RouterEntry(id=router_id, power_T=_decimal(instance.router_power[router]), cards=cards))

    links = [
        LinkEntry(
            source_port=instance.port_ids[instance.source_port_of_link[link]],
            target_port=instance.port_ids[instance.target_port_of_link[link]],
            states=[
                LinkStateEntry(capacity=_decimal(state.capacity), power=_decimal(state.power))
                for state in states
            ],
        )
        for link, states in enumerate(instance.link_states)
    ]
    demands = [
        DemandEntry(
            source_router=instance.router_ids[demand.source],
            target_router=instance.router_ids[demand.target],
            volume=_decimal(demand.volume),
        )
        for demand in instance.demands
    ]
    return InstanceFile(routers=routers, links=links, demands=demands, state_count=instance.state_count)


def _decimal(value: Fraction) -> Decimal:
    return Decimal(format_decimal(value))
