"""Hierarchical network instance: routers, cards, ports, directed links, demands."""
from fractions import Fraction
from functools import cached_property
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict


class StateSpec(BaseModel):
    """Capacity and power of one link in one energy state."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    capacity: Fraction
    power: Fraction


class Demand(BaseModel):
    """Unsplittable traffic requirement between two routers (dense indices)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: int
    target: int
    volume: Fraction


class EdgePair(BaseModel):
    """Two opposite directed links joining ``port_a`` and ``port_b``.

    ``forward`` runs port_a -> port_b, ``reverse`` runs port_b -> port_a.
    """
    model_config = ConfigDict(frozen=True)

    forward: int
    reverse: int
    port_a: int
    port_b: int


class Incidence(NamedTuple):
    """Dense 0/1 incidence matrices l, g, a, b."""
    card_port: np.ndarray  # l: card x port
    router_card: np.ndarray  # g: router x card
    link_out: np.ndarray  # a: link x port, link leaves port
    link_in: np.ndarray  # b: link x port, link enters port


class Instance(BaseModel):
    """Validated, immutable network description.

    Only ``build_instance`` should construct one; it guarantees every
    structural invariant (unique source/target port per link, paired links,
    no self loops, well-formed demands, K states per link).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    router_ids: Tuple[str, ...]
    card_ids: Tuple[str, ...]
    port_ids: Tuple[str, ...]

    router_of_card: Tuple[int, ...]
    card_of_port: Tuple[int, ...]
    out_link_of_port: Tuple[Optional[int], ...]
    in_link_of_port: Tuple[Optional[int], ...]

    state_count: int
    link_states: Tuple[Tuple[StateSpec, ...], ...]
    demands: Tuple[Demand, ...]

    card_power: Tuple[Fraction, ...]
    router_power: Tuple[Fraction, ...]

    # Dimensions

    @property
    def router_count(self) -> int:
        return len(self.router_ids)

    @property
    def card_count(self) -> int:
        return len(self.card_ids)

    @property
    def port_count(self) -> int:
        return len(self.port_ids)

    @property
    def link_count(self) -> int:
        return len(self.link_states)

    @property
    def demand_count(self) -> int:
        return len(self.demands)

    # Derived lookups

    @cached_property
    def source_port_of_link(self) -> Tuple[int, ...]:
        sources = [0] * self.link_count
        for port, link in enumerate(self.out_link_of_port):
            if link is not None:
                sources[link] = port
        return tuple(sources)

    @cached_property
    def target_port_of_link(self) -> Tuple[int, ...]:
        targets = [0] * self.link_count
        for port, link in enumerate(self.in_link_of_port):
            if link is not None:
                targets[link] = port
        return tuple(targets)

    @cached_property
    def ports_of_card(self) -> Tuple[Tuple[int, ...], ...]:
        grouped: List[List[int]] = [[] for _ in self.card_ids]
        for port, card in enumerate(self.card_of_port):
            grouped[card].append(port)
        return tuple(tuple(ports) for ports in grouped)

    @cached_property
    def cards_of_router(self) -> Tuple[Tuple[int, ...], ...]:
        grouped: List[List[int]] = [[] for _ in self.router_ids]
        for card, router in enumerate(self.router_of_card):
            grouped[router].append(card)
        return tuple(tuple(cards) for cards in grouped)

    def router_of_port(self, port: int) -> int:
        return self.router_of_card[self.card_of_port[port]]

    def link_endpoints(self, link: int) -> Tuple[int, int]:
        """(source router, target router) of a directed link."""
        return (
            self.router_of_port(self.source_port_of_link[link]),
            self.router_of_port(self.target_port_of_link[link]),
        )

    def connected_ports(self) -> List[int]:
        return [
            port for port, link in enumerate(self.out_link_of_port)
            if link is not None
        ]

    def link_label(self, link: int) -> str:
        """Human-readable ``src->dst`` port label of a link."""
        return (
            f"{self.port_ids[self.source_port_of_link[link]]}"
            f"->{self.port_ids[self.target_port_of_link[link]]}"
        )

    # Dense views

    @cached_property
    def incidence(self) -> Incidence:
        """Dense l, g, a, b matrices derived from the sparse maps."""
        card_port = np.zeros((self.card_count, self.port_count), dtype=np.int64)
        router_card = np.zeros((self.router_count, self.card_count), dtype=np.int64)
        link_out = np.zeros((self.link_count, self.port_count), dtype=np.int64)
        link_in = np.zeros((self.link_count, self.port_count), dtype=np.int64)
        for port, card in enumerate(self.card_of_port):
            card_port[card, port] = 1
        for card, router in enumerate(self.router_of_card):
            router_card[router, card] = 1
        for port, link in enumerate(self.out_link_of_port):
            if link is not None:
                link_out[link, port] = 1
        for port, link in enumerate(self.in_link_of_port):
            if link is not None:
                link_in[link, port] = 1
        return Incidence(
            card_port=card_port, router_card=router_card, link_out=link_out, link_in=link_in
        )

    @cached_property
    def router_link_masks(self) -> Tuple[np.ndarray, np.ndarray]:
        """(R x E) matrices of sum_c sum_p g_rc l_cp a_ep and the same with b."""
        inc = self.incidence
        through = inc.router_card @ inc.card_port
        return through @ inc.link_out.T, through @ inc.link_in.T

    def router_links(self, router: int) -> Tuple[List[int], List[int]]:
        """Outgoing and incoming links of ``router``, both ascending."""
        out_mask, in_mask = self.router_link_masks
        outgoing = [int(e) for e in np.flatnonzero(out_mask[router])]
        incoming = [int(e) for e in np.flatnonzero(in_mask[router])]
        return outgoing, incoming

    @cached_property
    def edge_pairs(self) -> Tuple[EdgePair, ...]:
        """Unique pairing of directed links into edges, ordered by lower link id."""
        pairs: List[EdgePair] = []
        seen = set()
        for link in range(self.link_count):
            if link in seen:
                continue
            port_a = self.source_port_of_link[link]
            port_b = self.target_port_of_link[link]
            reverse = self.out_link_of_port[port_b]
            assert reverse is not None
            seen.update((link, reverse))
            pairs.append(EdgePair(forward=link, reverse=reverse, port_a=port_a, port_b=port_b))
        return tuple(pairs)


def edge_pairs(instance: Instance) -> List[EdgePair]:
    """Every directed link appears in exactly one pair."""
    return list(instance.edge_pairs)


def router_links(instance: Instance, router: int) -> Tuple[List[int], List[int]]:
    return instance.router_links(router)
