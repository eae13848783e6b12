"""Simple router-level paths for each demand."""
from typing import List, Optional, Union

import networkx as nx

from greenroute.core.errors import PathLimitExceeded
from greenroute.core.logging import get_logger
from greenroute.models.instance import Demand, Instance
from greenroute.models.solution import RouterPath

logger = get_logger(__name__)


def router_graph(instance: Instance) -> nx.MultiDiGraph:
    """One node per router and one keyed edge per directed link (key = link id)."""
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(instance.router_count))
    for link in range(instance.link_count):
        tail, head = instance.link_endpoints(link)
        graph.add_edge(tail, head, key=link)
    return graph


def enumerate_paths(
    instance: Instance,
    demand: Union[Demand, int],
    max_paths: int,
    graph: Optional[nx.MultiDiGraph] = None,
    strict: bool = False,
) -> List[RouterPath]:
    """All simple paths from s_d to t_d, in lexicographic link-id order.

    ``demand`` is one of the instance's own Demand objects or its index. The list is
    truncated at ``max_paths``; with ``strict`` a longer list raises
    ``PathLimitExceeded`` instead. An empty list means the target is
    unreachable.
    """
    if max_paths < 1:
        raise ValueError("max_paths must be at least 1")
    if isinstance(demand, int):
        demand_index = demand
    else:
        # equal demands are allowed, so match the object itself
        found = next((i for i, d in enumerate(instance.demands) if d is demand), None)
        if found is None:
            raise ValueError("demand does not belong to this instance")
        demand_index = found
    spec = instance.demands[demand_index]
    graph = graph if graph is not None else router_graph(instance)

    link_sequences = sorted(
        tuple(key for _, _, key in edge_path)
        for edge_path in nx.all_simple_edge_paths(graph, spec.source, spec.target)
    )
    if len(link_sequences) > max_paths:
        if strict:
            raise PathLimitExceeded(
                f"demand d={demand_index + 1} has {len(link_sequences)} simple paths, "
                f"more than the cap of {max_paths}"
            )
        logger.warning(f"Truncating {len(link_sequences)} paths to {max_paths} for demand d={demand_index + 1}")
        link_sequences = link_sequences[:max_paths]
    return [RouterPath(demand=demand_index, links=links) for links in link_sequences]
