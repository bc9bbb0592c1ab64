"""Weighted least-squares fit of currency potentials from quote graphs.

Each quote contributes one equation ln(rate) ~ potential(src) - potential(dst).
Because only differences are observable (gauge freedom), the system is made
identifiable by pinning the reference potential to exactly 0 and solving for
the remaining nodes. Under connectivity the reduced normal matrix is the
weighted graph Laplacian with the reference row/column removed, which is
symmetric positive definite, so the minimizer is unique and conjugate
gradients converge quickly at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, ValidationError
from .graph import Edge, ExchangeGraph, validate_connectivity
from .potentials import PotentialTable


@dataclass
class FitResult:
    """Fitted potentials plus per-edge diagnostics.

    ``residuals[i]`` is the observed log rate of edge i minus the fitted
    potential difference; ``objective`` is the weighted sum of squared
    residuals the solver minimized.
    """

    table: PotentialTable
    residuals: np.ndarray
    objective: float
    solver_iterations: int
    converged: bool


def _conjugate_gradient(matrix, rhs, tolerance, max_iterations):
    """Solve matrix @ x = rhs for SPD matrix; returns (x, iterations, converged).

    Convergence is relative: ||rhs - matrix @ x|| <= tolerance * ||rhs||.
    """
    n = rhs.shape[0]
    x = np.zeros(n)
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return x, 0, True

    residual = rhs.copy()
    direction = residual.copy()
    residual_sq = float(residual @ residual)
    iterations = 0
    while iterations < max_iterations:
        if np.sqrt(residual_sq) <= tolerance * rhs_norm:
            return x, iterations, True
        step = matrix @ direction
        denom = float(direction @ step)
        if denom <= 0.0:
            break  # loss of positive definiteness in floating point
        alpha = residual_sq / denom
        x = x + alpha * direction
        residual = residual - alpha * step
        next_sq = float(residual @ residual)
        direction = residual + (next_sq / residual_sq) * direction
        residual_sq = next_sq
        iterations += 1
    converged = np.sqrt(residual_sq) <= tolerance * rhs_norm
    return x, iterations, converged


def fit_potentials(
    graph: ExchangeGraph,
    reference: str,
    tolerance: float = 1e-10,
    max_iterations: int | None = None,
) -> FitResult:
    """Fit a reference-pinned potential table to the graph's observations.

    Minimizes sum(weight * (log_rate - (p_src - p_dst))**2) subject to
    p_reference = 0. Raises :class:`DisconnectedGraphError` when some
    currencies cannot reach the reference; returns ``converged=False`` when
    conjugate gradients does not reach ``tolerance`` (relative residual of
    the normal equations) within ``max_iterations`` (default 10 * n nodes).
    """
    components = validate_connectivity(graph, reference)
    if components:
        raise DisconnectedGraphError(
            f"{sum(len(c) for c in components)} currencies cannot reach the "
            f"reference {reference}: {components}",
            components=components,
        )
    if tolerance <= 0:
        raise ValidationError(f"tolerance must be positive, got {tolerance!r}")
    if max_iterations is None:
        max_iterations = 10 * len(graph.nodes)

    free = [node for node in graph.nodes if node != reference]
    index = {node: i for i, node in enumerate(free)}
    n = len(free)

    laplacian = np.zeros((n, n))
    rhs = np.zeros(n)
    for edge in graph.edges:
        i = index.get(edge.src)
        j = index.get(edge.dst)
        if i is not None:
            laplacian[i, i] += edge.weight
            rhs[i] += edge.weight * edge.log_rate
        if j is not None:
            laplacian[j, j] += edge.weight
            rhs[j] -= edge.weight * edge.log_rate
        if i is not None and j is not None:
            laplacian[i, j] -= edge.weight
            laplacian[j, i] -= edge.weight

    solution, iterations, converged = _conjugate_gradient(
        laplacian, rhs, tolerance, max_iterations
    )

    potentials = {reference: 0.0}
    for node, i in index.items():
        potentials[node] = float(solution[i])
    table = PotentialTable(reference=reference, entries=potentials)

    residuals = np.array(
        [
            edge.log_rate - (potentials[edge.src] - potentials[edge.dst])
            for edge in graph.edges
        ]
    )
    weights = np.array([edge.weight for edge in graph.edges])
    objective = float(weights @ (residuals * residuals)) if len(residuals) else 0.0

    return FitResult(
        table=table,
        residuals=residuals,
        objective=objective,
        solver_iterations=iterations,
        converged=converged,
    )


def residual_report(
    fit: FitResult, graph: ExchangeGraph, threshold: float
) -> list[tuple[int, Edge, float]]:
    """Edges whose |residual| exceeds the threshold, worst first.

    Returns (edge index, edge, residual) triples sorted by descending
    absolute residual; an empty list means the quotes are globally
    consistent at this threshold.
    """
    if len(fit.residuals) != len(graph.edges):
        raise ValidationError(
            f"fit has {len(fit.residuals)} residuals but the graph has "
            f"{len(graph.edges)} edges; they do not belong together"
        )
    flagged = [
        (i, edge, float(res))
        for i, (edge, res) in enumerate(zip(graph.edges, fit.residuals))
        if abs(res) > threshold
    ]
    flagged.sort(key=lambda item: (-abs(item[2]), item[0]))
    return flagged
