"""Quotes, cross-rate parity, and commission as log-space overpotential.

A quote says "1 base = rate quote units", optionally taxed by a
proportional commission on the received amount. In log space the commission
becomes an additive, always non-negative overpotential, so it composes
directly with potential differences.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime
import math

from .errors import DomainError
from .validation import (
    check_commission_fraction,
    check_currency_code,
    require_positive,
)


@dataclass(frozen=True)
class Commission:
    """Proportional fee, as a fraction of the received amount, in [0, 1)."""

    fraction: float = 0.0

    def __post_init__(self):
        check_commission_fraction(self.fraction)


def _fraction_of(commission: "Commission | float") -> float:
    if isinstance(commission, Commission):
        return commission.fraction
    return check_commission_fraction(commission)


def _check_timestamp(value: str) -> str:
    text = value.replace("Z", "+00:00") if value.endswith("Z") else value
    try:
        datetime.fromisoformat(text)
    except ValueError as exc:
        raise DomainError(f"timestamp is not ISO-8601: {value!r}") from exc
    return value


@dataclass(frozen=True)
class Quote:
    """One observed exchange rate: 1 ``base`` buys ``rate`` units of ``quote``.

    ``commission`` is the proportional fee charged on the received amount;
    ``weight`` expresses confidence when several quotes disagree.
    """

    base: str
    quote: str
    rate: float
    commission: float = 0.0
    weight: float = 1.0
    timestamp: str | None = None

    def __post_init__(self):
        check_currency_code(self.base)
        check_currency_code(self.quote)
        if self.base == self.quote:
            raise DomainError(f"quote base and quote currency are both {self.base!r}")
        require_positive(self.rate, "rate")
        check_commission_fraction(self.commission)
        require_positive(self.weight, "weight")
        if self.timestamp is not None:
            _check_timestamp(self.timestamp)


def ocp_cross_rate(a: float, b: float) -> float:
    """Official cross rate from two quotes against a common currency.

    Given 1 X = ``a`` Y and 1 X = ``b`` Z, returns c = a / b, read as
    "c units of Y per 1 unit of Z".
    """
    a = require_positive(a, "first quote")
    b = require_positive(b, "second quote")
    return a / b


def invert_quote(q: Quote) -> Quote:
    """Swap the direction of a quote; commission and weight are preserved."""
    return replace(q, base=q.quote, quote=q.base, rate=1.0 / q.rate)


def effective_rate(rate: float, commission: Commission | float) -> float:
    """Rate actually received after the proportional commission."""
    rate = require_positive(rate, "rate")
    return rate * (1.0 - _fraction_of(commission))


def overpotential(commission: Commission | float) -> float:
    """Log-space cost of a commission: -ln(1 - fraction).

    Zero iff the commission is zero, strictly increasing in the fraction,
    and additive along a chain of exchanges. An exchange only flows while
    its EMF exceeds this threshold.
    """
    return -math.log1p(-_fraction_of(commission))
