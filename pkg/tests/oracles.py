"""Independent oracles the solver tests compare against.

Nothing here may call into the fitting or arbitrage code paths it checks:
the fit oracle is a dense grid search with local refinement, and the cycle
oracle enumerates node permutations directly. Both are deliberately brute
force.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

# Directed weighted observations as plain tuples to stay decoupled from the
# package's graph classes: (src, dst, log_rate, weight, overpotential).
RawEdge = tuple[str, str, float, float, float]


def objective_value(nodes: list[str], edges: list[RawEdge],
                    potentials: dict[str, float]) -> float:
    total = 0.0
    for src, dst, log_rate, weight, _ in edges:
        r = log_rate - (potentials[src] - potentials[dst])
        total += weight * r * r
    return total


def grid_refine_fit(
    nodes: list[str],
    reference: str,
    edges: list[RawEdge],
    lower: float = -8.0,
    upper: float = 8.0,
    coarse: int = 33,
    rounds: int = 18,
    local: int = 11,
) -> tuple[dict[str, float], float]:
    """Brute-force minimizer: dense grid, then shrinking local grids.

    The objective is a convex quadratic in the free potentials, so the grid
    best point is within one spacing of the true minimum and each
    refinement round shrinks the box geometrically.
    """
    free = [n for n in nodes if n != reference]
    d = len(free)
    if d == 0:
        return {reference: 0.0}, objective_value(nodes, edges, {reference: 0.0})

    src_idx = []
    dst_idx = []
    log_rates = []
    weights = []
    position = {n: i for i, n in enumerate(free)}
    for src, dst, log_rate, weight, _ in edges:
        src_idx.append(position.get(src, -1))
        dst_idx.append(position.get(dst, -1))
        log_rates.append(log_rate)
        weights.append(weight)
    src_idx = np.array(src_idx)
    dst_idx = np.array(dst_idx)
    log_rates = np.array(log_rates)
    weights = np.array(weights)

    def batch_objective(points: np.ndarray) -> np.ndarray:
        # points: (N, d); reference contributes 0.
        padded = np.concatenate([points, np.zeros((points.shape[0], 1))], axis=1)
        diffs = padded[:, src_idx] - padded[:, dst_idx]
        residuals = log_rates[None, :] - diffs
        return (weights[None, :] * residuals * residuals).sum(axis=1)

    def grid_around(center: np.ndarray, half: float, count: int) -> np.ndarray:
        axes = [np.linspace(center[i] - half, center[i] + half, count)
                for i in range(d)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    center = np.full(d, (lower + upper) / 2.0)
    half = (upper - lower) / 2.0
    points = grid_around(center, half, coarse)
    best = points[int(np.argmin(batch_objective(points)))]
    spacing = 2.0 * half / (coarse - 1)

    for _ in range(rounds):
        half = 2.0 * spacing  # keep the continuum minimum inside the box
        points = grid_around(best, half, local)
        best = points[int(np.argmin(batch_objective(points)))]
        spacing = 2.0 * half / (local - 1)

    potentials = {reference: 0.0}
    for i, node in enumerate(free):
        potentials[node] = float(best[i])
    return potentials, objective_value(nodes, edges, potentials)


def _best_net_edges(edges: list[RawEdge]) -> dict[tuple[str, str], tuple[float, float]]:
    """(src, dst) -> (log_rate, net_gain) of the best parallel observation."""
    best: dict[tuple[str, str], tuple[float, float]] = {}
    for src, dst, log_rate, _, over in edges:
        net = log_rate - over
        key = (src, dst)
        if key not in best or net > best[key][1]:
            best[key] = (log_rate, net)
    return best


def enumerate_profitable_cycles(
    nodes: list[str], edges: list[RawEdge], tolerance: float
) -> list[tuple[tuple[str, ...], float, float]]:
    """All simple directed cycles with net log gain above tolerance.

    Checks every cyclic node arrangement by permutation, so it is only
    usable for small node counts. Returns (path, gross, net) triples with
    each cycle anchored at its lexicographically smallest node.
    """
    best = _best_net_edges(edges)
    results = []
    for size in range(2, len(nodes) + 1):
        for combo in itertools.combinations(sorted(nodes), size):
            anchor = combo[0]
            for rest in itertools.permutations(combo[1:]):
                path = (anchor,) + rest
                gross = 0.0
                net = 0.0
                ok = True
                for i in range(size):
                    key = (path[i], path[(i + 1) % size])
                    if key not in best:
                        ok = False
                        break
                    log_rate, edge_net = best[key]
                    gross += log_rate
                    net += edge_net
                if ok and net > tolerance:
                    results.append((path, gross, net))
    return results


def profitable_cycle_exists(
    nodes: list[str], edges: list[RawEdge], tolerance: float
) -> bool:
    return bool(enumerate_profitable_cycles(nodes, edges, tolerance))


def equilibrium_count_by_trace(initial_emf, threshold, delta, quantum) -> int:
    """Transfer count by literally walking the EMF sequence in exact arithmetic."""
    count = 0
    emf_now = initial_emf
    while emf_now > threshold:
        emf_now -= delta * quantum
        count += 1
        if count > 10_000_000:
            raise RuntimeError("trace did not terminate")
    return count


def cross_rate_by_division(table: dict[str, float], x: str, y: str, z: str) -> float:
    """Cross rate Z->Y via two quotes of X, straight from exponentials."""
    a = math.exp(table[x] - table[y])
    b = math.exp(table[x] - table[z])
    return a / b
