"""Seeded random instances small enough for the brute-force oracle.

Every generated instance is connected, has at most five routers, two cards
per router, two ports per card, four edges (eight directed links), three
demands and three energy states. Volumes are capped so that all demands fit
on any single link in its top state, which makes every instance feasible.
"""
import random
from decimal import Decimal
from typing import List, Set, Tuple

import networkx as nx

from greenroute.core.logging import get_logger
from greenroute.schemas.instance_file import (
    CardEntry,
    DemandEntry,
    EdgeEntry,
    EdgeStateEntry,
    InstanceFile,
    PortEntry,
    RouterEntry,
)
from greenroute.services.ingest.instance_loader import build_instance
from greenroute.services.solver.paths import router_graph

logger = get_logger(__name__)

MAX_ROUTERS = 5
MAX_EDGES = 4
MAX_DEMANDS = 3
MAX_STATES = 3
PORTS_PER_CARD = 2
CARDS_PER_ROUTER = 2
MAX_DEGREE = PORTS_PER_CARD * CARDS_PER_ROUTER


def _connected_pairs(rng: random.Random, routers: int) -> List[Tuple[int, int]]:
    """Random spanning tree plus a few extra edges, respecting the port budget."""
    order = list(range(routers))
    rng.shuffle(order)
    degree = [0] * routers
    edges: List[Tuple[int, int]] = []
    in_tree = [order[0]]
    for node in order[1:]:
        candidates = [other for other in in_tree if degree[other] < MAX_DEGREE]
        other = rng.choice(candidates)
        edges.append((other, node))
        degree[other] += 1
        degree[node] += 1
        in_tree.append(node)

    existing: Set[Tuple[int, int]] = {tuple(sorted(edge)) for edge in edges}
    extra = rng.randint(0, MAX_EDGES - len(edges))
    attempts = 0
    while extra > 0 and attempts < routers * routers:
        attempts += 1
        a, b = rng.sample(range(routers), 2)
        key = (min(a, b), max(a, b))
        if key in existing or degree[a] >= MAX_DEGREE or degree[b] >= MAX_DEGREE:
            continue
        existing.add(key)
        edges.append((a, b))
        degree[a] += 1
        degree[b] += 1
        extra -= 1
    return edges


def _half_steps(rng: random.Random, low: int, high: int) -> Decimal:
    return Decimal(rng.randint(2 * low, 2 * high)) / 2


class RandomInstanceGenerator:
    """Builds one instance file from a seed; equal seeds give equal files."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def _states(self, state_count: int) -> List[EdgeStateEntry]:
        rng = self.rng
        return [
            EdgeStateEntry(
                capacity_fwd=Decimal(10 * (k + 1) * rng.choice([1, 2])),
                capacity_rev=Decimal(10 * (k + 1) * rng.choice([1, 2])),
                power_fwd=Decimal(k + 1) + rng.choice([Decimal(0), Decimal("0.5")]),
                power_rev=Decimal(k + 1) + rng.choice([Decimal(0), Decimal("0.5")]),
            )
            for k in range(state_count)
        ]

    def _hierarchy(self, router_count: int, degree: List[int]) -> Tuple[List[RouterEntry], List[List[str]]]:
        """Routers with just enough ports for their edges; returns free port ids per router."""
        rng = self.rng
        routers: List[RouterEntry] = []
        free_ports: List[List[str]] = []
        card_number = port_number = 0
        for r in range(router_count):
            wanted = degree[r]
            if wanted % PORTS_PER_CARD and rng.random() < 0.3:
                wanted += 1  # one port left unused
            cards: List[CardEntry] = []
            linked: List[str] = []
            remaining = max(wanted, 1)
            while remaining > 0:
                card_number += 1
                ports = []
                for _ in range(min(PORTS_PER_CARD, remaining)):
                    port_number += 1
                    ports.append(PortEntry(id=f"p{port_number}"))
                remaining -= len(ports)
                linked += [port.id for port in ports]
                cards.append(CardEntry(id=f"c{card_number}", power_W=_half_steps(rng, 0, 3), ports=ports))
            if len(cards) < CARDS_PER_ROUTER and rng.random() < 0.2:
                card_number += 1
                cards.append(CardEntry(id=f"c{card_number}", power_W=_half_steps(rng, 0, 3), ports=[]))
            routers.append(RouterEntry(id=f"r{r + 1}", power_T=_half_steps(rng, 0, 3), cards=cards))
            free_ports.append(linked[:degree[r]])
        return routers, free_ports

    def generate(self) -> InstanceFile:
        rng = self.rng
        router_count = rng.randint(2, MAX_ROUTERS)
        pairs = _connected_pairs(rng, router_count)
        degree = [0] * router_count
        for a, b in pairs:
            degree[a] += 1
            degree[b] += 1

        routers, free_ports = self._hierarchy(router_count, degree)
        state_count = rng.randint(1, MAX_STATES)
        edges: List[EdgeEntry] = []
        for a, b in pairs:
            if rng.random() < 0.5:
                a, b = b, a
            edges.append(
                EdgeEntry(
                    port_a=free_ports[a].pop(0),
                    port_b=free_ports[b].pop(0),
                    states=self._states(state_count),
                )
            )

        top = min(
            min(edge.states[-1].capacity_fwd, edge.states[-1].capacity_rev) for edge in edges
        )
        demand_count = rng.randint(1, MAX_DEMANDS)
        cap = max(1, int(top) // demand_count)
        demands = []
        for _ in range(demand_count):
            source, target = rng.sample(range(router_count), 2)
            demands.append(DemandEntry(
                source_router=f"r{source + 1}",
                target_router=f"r{target + 1}",
                volume=Decimal(rng.randint(1, cap)),
            ))

        spec = InstanceFile(routers=routers, edges=edges, demands=demands)
        self._check_routes(spec)
        return spec

    def _check_routes(self, spec: InstanceFile) -> None:
        instance = build_instance(spec)
        graph = router_graph(instance)
        for d, demand in enumerate(instance.demands):
            if not nx.has_path(graph, demand.source, demand.target):
                raise ValueError(f"seed {self.seed}: demand d={d + 1} has no route")
        logger.debug(
            f"Generated seed {self.seed}: R={instance.router_count} E={instance.link_count} "
            f"K={instance.state_count} D={instance.demand_count}"
        )


def generate_instance_file(seed: int) -> InstanceFile:
    return RandomInstanceGenerator(seed).generate()


def dump_instance_file(spec: InstanceFile) -> str:
    return spec.model_dump_json(indent=2) + "\n"

