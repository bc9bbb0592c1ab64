"""Exchange graph: quotes as directed log-rate edges between currencies."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
import math
from typing import Iterable, Sequence

from .errors import ValidationError
from .parity import Quote, overpotential


@dataclass(frozen=True)
class Edge:
    """One observation: ln(rate) from ``src`` to ``dst`` plus its commission cost."""

    src: str
    dst: str
    log_rate: float
    weight: float = 1.0
    overpotential: float = 0.0

    @property
    def net_log_gain(self) -> float:
        return self.log_rate - self.overpotential


@dataclass(frozen=True)
class ExchangeGraph:
    """Directed multigraph of log-rate observations.

    Duplicate (src, dst) pairs are kept as independent observations; nodes
    are stored sorted for deterministic iteration.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        node_set = set(self.nodes)
        for edge in self.edges:
            if edge.src == edge.dst:
                raise ValidationError(f"self-loop edge on {edge.src}")
            if edge.src not in node_set or edge.dst not in node_set:
                raise ValidationError(
                    f"edge {edge.src}->{edge.dst} references a node missing "
                    "from the graph"
                )
            if edge.weight <= 0 or not math.isfinite(edge.weight):
                raise ValidationError(
                    f"edge {edge.src}->{edge.dst} has invalid weight {edge.weight!r}"
                )
            if not math.isfinite(edge.log_rate):
                raise ValidationError(
                    f"edge {edge.src}->{edge.dst} has non-finite log rate"
                )

    def node_index(self) -> dict[str, int]:
        return {code: i for i, code in enumerate(self.nodes)}


def build_graph(quotes: Sequence[Quote] | Iterable[Quote]) -> ExchangeGraph:
    """Turn a quote set into an exchange graph, one edge per quote."""
    quotes = list(quotes)
    if not quotes:
        raise ValidationError("cannot build a graph from an empty quote set")
    nodes: set[str] = set()
    edges = []
    for q in quotes:
        nodes.add(q.base)
        nodes.add(q.quote)
        edges.append(
            Edge(
                src=q.base,
                dst=q.quote,
                log_rate=math.log(q.rate),
                weight=q.weight,
                overpotential=overpotential(q.commission),
            )
        )
    return ExchangeGraph(nodes=tuple(sorted(nodes)), edges=tuple(edges))


def validate_connectivity(graph: ExchangeGraph, reference: str) -> list[list[str]]:
    """List the node groups that cannot reach the reference.

    Edges are treated as undirected for reachability. An empty list means
    every currency is connected to the reference and a fit is well-posed.
    """
    if reference not in graph.nodes:
        raise ValidationError(f"reference {reference!r} is not a node of the graph")

    neighbors: dict[str, set[str]] = {node: set() for node in graph.nodes}
    for edge in graph.edges:
        neighbors[edge.src].add(edge.dst)
        neighbors[edge.dst].add(edge.src)

    reached = {reference}
    queue = deque([reference])
    while queue:
        node = queue.popleft()
        for other in neighbors[node]:
            if other not in reached:
                reached.add(other)
                queue.append(other)

    unreachable = [node for node in graph.nodes if node not in reached]
    if not unreachable:
        return []

    # Group the stragglers into their own connected components.
    components: list[list[str]] = []
    seen: set[str] = set()
    for start in unreachable:
        if start in seen:
            continue
        component = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for other in neighbors[node]:
                if other not in component:
                    component.add(other)
                    queue.append(other)
        seen |= component
        components.append(sorted(component))
    return components
