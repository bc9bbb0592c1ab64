"""Scikit-learn style estimators wrapping the fitting and arbitrage cores.

These follow the standard estimator contract (`get_params` / `set_params`
via ``BaseEstimator``, ``fit`` returning self, fitted attributes with a
trailing underscore) so they compose with pipelines, `clone`, and parameter
search. Input ``X`` is a collection of quotes: `Quote` objects, mappings
with the quote field names, or (base, quote, rate[, commission[, weight]])
rows.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .arbitrage import MAX_ENUMERATION_NODES, ArbitrageCycle, detect_arbitrage
from .errors import ValidationError
from .fitting import fit_potentials
from .graph import build_graph
from .parity import Quote


def coerce_quotes(X) -> list[Quote]:
    """Normalize estimator input into a list of validated quotes."""
    if isinstance(X, Quote):
        return [X]
    quotes: list[Quote] = []
    if not isinstance(X, Iterable):
        raise ValidationError(f"cannot interpret {type(X).__name__} as quotes")
    for i, row in enumerate(X):
        if isinstance(row, Quote):
            quotes.append(row)
        elif isinstance(row, Mapping):
            try:
                quotes.append(Quote(**row))
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"row {i}: {exc}") from exc
        elif isinstance(row, Sequence) and not isinstance(row, (str, bytes)):
            if not 3 <= len(row) <= 6:
                raise ValidationError(
                    f"row {i}: expected (base, quote, rate[, commission[, weight"
                    f"[, timestamp]]]), got {len(row)} fields"
                )
            base, quote_code, rate = row[0], row[1], float(row[2])
            commission = float(row[3]) if len(row) > 3 else 0.0
            weight = float(row[4]) if len(row) > 4 else 1.0
            timestamp = row[5] if len(row) > 5 else None
            try:
                quotes.append(
                    Quote(base=base, quote=quote_code, rate=rate,
                          commission=commission, weight=weight, timestamp=timestamp)
                )
            except ValueError as exc:
                raise ValidationError(f"row {i}: {exc}") from exc
        else:
            raise ValidationError(f"row {i}: cannot interpret {row!r} as a quote")
    return quotes


class PotentialFitter(TransformerMixin, BaseEstimator):
    """Least-squares estimator of currency potentials from quotes.

    Parameters
    ----------
    reference : str
        Currency pinned to potential 0; every quoted currency must connect
        to it through the quote graph.
    tolerance : float, default 1e-10
        Relative residual of the normal equations at which the solver is
        considered converged.
    max_iterations : int or None, default None
        Conjugate-gradient iteration cap; None means 10 * number of nodes.

    Attributes
    ----------
    table_ : PotentialTable
        Fitted reference-pinned potentials.
    potentials_ : dict[str, float]
        Same values as a plain mapping.
    residuals_ : ndarray
        Per-quote residual, observed log rate minus fitted difference.
    objective_ : float
        Weighted sum of squared residuals.
    n_iter_ : int
        Solver iterations used.
    converged_ : bool
        Whether the solver met the tolerance.
    """

    def __init__(self, reference: str = "USD", tolerance: float = 1e-10,
                 max_iterations: int | None = None):
        self.reference = reference
        self.tolerance = tolerance
        self.max_iterations = max_iterations

    def fit(self, X, y=None):
        quotes = coerce_quotes(X)
        self.graph_ = build_graph(quotes)
        result = fit_potentials(
            self.graph_,
            reference=self.reference,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
        )
        self.table_ = result.table
        self.potentials_ = dict(result.table.entries)
        self.residuals_ = result.residuals
        self.objective_ = result.objective
        self.n_iter_ = result.solver_iterations
        self.converged_ = result.converged
        return self

    def _check_fitted(self):
        if not hasattr(self, "table_"):
            raise NotFittedError(
                f"this {type(self).__name__} instance is not fitted yet"
            )

    def transform(self, X) -> np.ndarray:
        """Residual of each quote against the fitted table (consistency scores)."""
        self._check_fitted()
        quotes = coerce_quotes(X)
        return np.array(
            [
                np.log(q.rate)
                - (self.table_.potential(q.base) - self.table_.potential(q.quote))
                for q in quotes
            ]
        )

    def predict(self, X) -> np.ndarray:
        """Cross rates implied by the fitted table for (from, to) code pairs."""
        self._check_fitted()
        rates = []
        for pair in X:
            src, dst = pair[0], pair[1]
            rates.append(
                np.exp(self.table_.potential(src) - self.table_.potential(dst))
            )
        return np.array(rates)


class ArbitrageDetector(BaseEstimator):
    """Detector of commission-aware arbitrage cycles in a quote set.

    Parameters
    ----------
    tolerance : float, default 1e-9
        Minimum net log gain for a cycle to count as profitable.
    max_enumeration_nodes : int, default 12
        Node count up to which the cycle search is exhaustive.

    Attributes
    ----------
    cycles_ : list[ArbitrageCycle]
        Profitable cycles found, best net gain first.
    profitable_ : bool
        Whether any profitable cycle exists at the tolerance.
    """

    def __init__(self, tolerance: float = 1e-9,
                 max_enumeration_nodes: int = MAX_ENUMERATION_NODES):
        self.tolerance = tolerance
        self.max_enumeration_nodes = max_enumeration_nodes

    def fit(self, X, y=None):
        quotes = coerce_quotes(X)
        graph = build_graph(quotes)
        self.graph_ = graph
        self.cycles_: list[ArbitrageCycle] = detect_arbitrage(
            graph,
            tolerance=self.tolerance,
            max_enumeration_nodes=self.max_enumeration_nodes,
        )
        self.profitable_ = bool(self.cycles_)
        return self

    def fit_detect(self, X) -> list[ArbitrageCycle]:
        """Convenience: fit on X and return the cycles found."""
        return self.fit(X).cycles_
