"""Shared generators for randomized tests."""

from __future__ import annotations

import math
import random
import string

from voltafx import Edge, ExchangeGraph, PotentialTable, Quote


def random_codes(rng: random.Random, count: int) -> list[str]:
    codes: set[str] = set()
    while len(codes) < count:
        codes.add("".join(rng.choice(string.ascii_uppercase) for _ in range(3)))
    return sorted(codes)


def random_table(rng: random.Random, count: int, reference: str | None = None) -> PotentialTable:
    codes = random_codes(rng, count)
    reference = reference or rng.choice(codes)
    entries = {code: rng.uniform(-2.0, 2.0) for code in codes}
    entries[reference] = 0.0
    return PotentialTable(reference=reference, entries=entries)


def random_connected_graph(
    rng: random.Random,
    n_nodes: int,
    extra_edges: int,
    noise: float = 0.1,
) -> ExchangeGraph:
    """Random spanning tree plus extra edges, log rates near a ground truth."""
    codes = random_codes(rng, n_nodes)
    truth = {code: rng.uniform(-2.0, 2.0) for code in codes}
    edges: list[Edge] = []
    connected = [codes[0]]
    for code in codes[1:]:
        other = rng.choice(connected)
        src, dst = (code, other) if rng.random() < 0.5 else (other, code)
        edges.append(_edge(rng, truth, src, dst, noise))
        connected.append(code)
    for _ in range(extra_edges):
        src, dst = rng.sample(codes, 2)
        edges.append(_edge(rng, truth, src, dst, noise))
    return ExchangeGraph(nodes=tuple(codes), edges=tuple(edges))


def _edge(rng: random.Random, truth: dict[str, float], src: str, dst: str,
          noise: float) -> Edge:
    log_rate = truth[src] - truth[dst] + rng.gauss(0.0, noise)
    return Edge(
        src=src,
        dst=dst,
        log_rate=log_rate,
        weight=rng.uniform(0.2, 5.0),
        overpotential=-math.log1p(-rng.uniform(0.0, 0.05)),
    )


def consistent_quotes_from_table(
    rng: random.Random, table: PotentialTable, n_quotes: int,
    commission_max: float = 0.0,
) -> list[Quote]:
    codes = table.codes()
    quotes = []
    # A chain through every code keeps the graph connected.
    for i in range(1, len(codes)):
        quotes.append(_quote(rng, table, codes[i - 1], codes[i], commission_max))
    for _ in range(n_quotes):
        src, dst = rng.sample(codes, 2)
        quotes.append(_quote(rng, table, src, dst, commission_max))
    return quotes


def _quote(rng: random.Random, table: PotentialTable, src: str, dst: str,
           commission_max: float) -> Quote:
    rate = math.exp(table.potential(src) - table.potential(dst))
    commission = rng.uniform(0.0, commission_max) if commission_max > 0 else 0.0
    return Quote(base=src, quote=dst, rate=rate, commission=commission,
                 weight=rng.uniform(0.5, 2.0))
