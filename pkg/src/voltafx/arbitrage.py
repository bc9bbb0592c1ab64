"""Commission-aware arbitrage cycle detection on exchange graphs.

A set of quotes admits a potential table exactly when every directed cycle
has zero circulation of log rates. A cycle whose summed log rates exceed the
summed commission overpotentials is a profitable arbitrage loop; detection
searches for cycles with positive net log gain, i.e. negative cycles under
the edge cost -(log_rate - overpotential).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, ExchangeGraph

# Exhaustive enumeration is exact but exponential; beyond this many nodes the
# detector falls back to Bellman-Ford negative-cycle extraction, which still
# answers the existence question at tolerance 0 but may miss marginal cycles.
MAX_ENUMERATION_NODES = 12


@dataclass(frozen=True)
class ArbitrageCycle:
    """A simple directed cycle of currencies with its log-space gains.

    ``path`` lists each node once; the cycle closes from the last entry back
    to the first. ``net_log_gain`` subtracts the summed overpotentials from
    ``gross_log_gain``; the cycle is profitable when the net gain exceeds
    the detection tolerance.
    """

    path: tuple[str, ...]
    gross_log_gain: float
    net_log_gain: float
    profitable: bool


def _best_edges(graph: ExchangeGraph) -> dict[tuple[str, str], Edge]:
    """Collapse parallel edges, keeping the best net gain per direction.

    A cycle through any parallel edge never beats the same cycle through
    the best one, so this preserves existence of profitable cycles.
    """
    best: dict[tuple[str, str], Edge] = {}
    for edge in graph.edges:
        key = (edge.src, edge.dst)
        current = best.get(key)
        if current is None or edge.net_log_gain > current.net_log_gain:
            best[key] = edge
    return best


def _cycle_from(path: list[str], edges: list[Edge], tolerance: float) -> ArbitrageCycle:
    gross = sum(e.log_rate for e in edges)
    net = sum(e.net_log_gain for e in edges)
    return ArbitrageCycle(
        path=tuple(path),
        gross_log_gain=gross,
        net_log_gain=net,
        profitable=net > tolerance,
    )


def _enumerate_cycles(
    graph: ExchangeGraph, best: dict[tuple[str, str], Edge], tolerance: float
) -> list[ArbitrageCycle]:
    """Every simple directed cycle with net gain above tolerance, exactly.

    Each cycle is produced once by anchoring it at its smallest node;
    2-node cycles (a crossed pair of quotes) are included.
    """
    nodes = list(graph.nodes)
    order = {node: i for i, node in enumerate(nodes)}
    successors: dict[str, list[str]] = {node: [] for node in nodes}
    for src, dst in best:
        successors[src].append(dst)
    for outs in successors.values():
        outs.sort()

    found: list[ArbitrageCycle] = []

    def extend(anchor: str, node: str, path: list[str], edges: list[Edge], on_path: set[str]):
        for nxt in successors[node]:
            if nxt == anchor:
                cycle_edges = edges + [best[(node, anchor)]]
                cycle = _cycle_from(path, cycle_edges, tolerance)
                if cycle.profitable:
                    found.append(cycle)
            elif order[nxt] > order[anchor] and nxt not in on_path:
                on_path.add(nxt)
                extend(anchor, nxt, path + [nxt], edges + [best[(node, nxt)]], on_path)
                on_path.remove(nxt)

    for anchor in nodes:
        extend(anchor, anchor, [anchor], [], {anchor})

    found.sort(key=lambda c: (-c.net_log_gain, c.path))
    return found


def _bellman_ford_cycles(
    graph: ExchangeGraph, best: dict[tuple[str, str], Edge], tolerance: float
) -> list[ArbitrageCycle]:
    """Negative-cycle extraction under cost = -(net log gain).

    Sound (every reported cycle is recomputed and profitable) but not
    exhaustive; used only above the enumeration size limit.
    """
    nodes = list(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    edge_list = [
        (index[src], index[dst], -edge.net_log_gain, edge)
        for (src, dst), edge in sorted(best.items())
    ]

    # Virtual source: start every node at distance 0.
    dist = [0.0] * n
    pred: list[int | None] = [None] * n
    flagged: set[int] = set()
    for round_ in range(n):
        changed = False
        for u, v, cost, _ in edge_list:
            if dist[u] + cost < dist[v] - 1e-15:
                dist[v] = dist[u] + cost
                pred[v] = u
                changed = True
                if round_ == n - 1:
                    flagged.add(v)
        if not changed:
            break

    cycles: list[ArbitrageCycle] = []
    seen_keys: set[tuple[str, ...]] = set()
    for start in flagged:
        # Walk predecessors n times to guarantee we are on the cycle itself.
        node = start
        for _ in range(n):
            node = pred[node] if pred[node] is not None else node
        cycle_nodes = [node]
        walker = pred[node]
        while walker is not None and walker != node:
            cycle_nodes.append(walker)
            walker = pred[walker]
        cycle_nodes.reverse()
        if len(cycle_nodes) < 2:
            continue
        # Rotate so the smallest code leads, for deduplication.
        smallest = min(range(len(cycle_nodes)), key=lambda i: nodes[cycle_nodes[i]])
        rotated = cycle_nodes[smallest:] + cycle_nodes[:smallest]
        path = [nodes[i] for i in rotated]
        key = tuple(path)
        if key in seen_keys:
            continue
        seen_keys.add(key)
        try:
            edges = [
                best[(path[i], path[(i + 1) % len(path)])] for i in range(len(path))
            ]
        except KeyError:
            continue
        cycle = _cycle_from(path, edges, tolerance)
        if cycle.profitable:
            cycles.append(cycle)

    cycles.sort(key=lambda c: (-c.net_log_gain, c.path))
    return cycles


def detect_arbitrage(
    graph: ExchangeGraph,
    tolerance: float = 1e-9,
    max_enumeration_nodes: int = MAX_ENUMERATION_NODES,
) -> list[ArbitrageCycle]:
    """Find simple directed cycles whose net log gain exceeds the tolerance.

    Up to ``max_enumeration_nodes`` nodes the search is exhaustive (one
    cycle per node sequence, routed through the best parallel edge), so a
    profitable cycle is reported iff one exists. Larger graphs use
    Bellman-Ford negative-cycle extraction, which stays sound but only
    guarantees existence detection for tolerance 0. An empty result means
    no profitable cycle was found at this tolerance.
    """
    best = _best_edges(graph)
    if len(graph.nodes) <= max_enumeration_nodes:
        return _enumerate_cycles(graph, best, tolerance)
    return _bellman_ford_cycles(graph, best, tolerance)
