"""Currency potentials, EMF, attractiveness scoring, and series ranking.

A currency's potential is a log-scale measure of purchasing power relative
to a declared reference currency, which is pinned at exactly 0. Only
differences of potentials are observable; the convention used throughout is

    potential(c) = ln(units of reference bought by 1 unit of c)

so a higher potential means stronger purchasing power, and the cross rate
between two currencies is the exponential of their potential difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import ConfigurationError, DomainError, UnknownCurrencyError
from .validation import check_currency_code, require_finite, require_positive


class Polarity(str, Enum):
    """Sign classification of a potential relative to the reference."""

    ELECTROPOSITIVE = "electropositive"  # potential > 0: in demand
    ELECTRONEGATIVE = "electronegative"  # potential < 0: not in demand
    REFERENCE = "reference"              # potential == 0


def classify_polarity(potential: float) -> Polarity:
    if potential > 0:
        return Polarity.ELECTROPOSITIVE
    if potential < 0:
        return Polarity.ELECTRONEGATIVE
    return Polarity.REFERENCE


@dataclass(frozen=True)
class SeriesEntry:
    """One ranked row of the currency series."""

    code: str
    potential: float
    polarity: Polarity

    def __post_init__(self):
        expected = classify_polarity(self.potential)
        if self.polarity is not expected:
            raise DomainError(
                f"{self.code}: potential {self.potential!r} classifies as "
                f"{expected.value}, not {self.polarity.value}"
            )


@dataclass(frozen=True)
class ScaleConfig:
    """Affine-then-clamp map from potential to a bounded attractiveness score.

    The reference (potential 0) maps to ``midpoint``; the default scale runs
    from 0 to 10 with the reference at 5.
    """

    midpoint: float = 5.0
    gain: float = 10.0
    lower: float = 0.0
    upper: float = 10.0

    def __post_init__(self):
        for name in ("midpoint", "gain", "lower", "upper"):
            value = getattr(self, name)
            if not math.isfinite(float(value)):
                raise ConfigurationError(f"scale {name} must be finite, got {value!r}")
        if self.gain <= 0:
            raise ConfigurationError(f"scale gain must be positive, got {self.gain!r}")
        if not self.lower < self.midpoint < self.upper:
            raise ConfigurationError(
                "scale bounds must satisfy lower < midpoint < upper, got "
                f"{self.lower!r} / {self.midpoint!r} / {self.upper!r}"
            )


@dataclass(frozen=True)
class PotentialTable:
    """Reference-pinned map from currency code to potential.

    The reference entry is always present with potential exactly 0.0; all
    other values are finite and meaningful only relative to that pin.
    """

    reference: str
    entries: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        check_currency_code(self.reference)
        normalized: dict[str, float] = {}
        for code, value in self.entries.items():
            check_currency_code(code)
            normalized[code] = require_finite(value, f"potential of {code}")
        if self.reference not in normalized:
            normalized[self.reference] = 0.0
        if normalized[self.reference] != 0.0:
            raise DomainError(
                f"reference {self.reference} must have potential exactly 0, "
                f"got {normalized[self.reference]!r}"
            )
        object.__setattr__(self, "entries", normalized)

    def potential(self, code: str) -> float:
        try:
            return self.entries[code]
        except KeyError:
            raise UnknownCurrencyError(
                f"currency {code!r} is not in the table "
                f"(reference {self.reference})"
            ) from None

    def codes(self) -> list[str]:
        return sorted(self.entries)

    def __contains__(self, code: str) -> bool:
        return code in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def emf(cathode_potential: float, anode_potential: float) -> float:
    """Electromotive force of a pair: cathode potential minus anode potential.

    This is the open-circuit drive of an exchange between the two
    currencies; it is antisymmetric under swapping the arguments.
    """
    cathode = require_finite(cathode_potential, "cathode potential")
    anode = require_finite(anode_potential, "anode potential")
    return cathode - anode


def emf_from_levels(inner: float, outer: float) -> float:
    """Potential leap across a contact: inner price level minus outer."""
    return require_finite(inner, "inner level") - require_finite(outer, "outer level")


def rate_from_potentials(table: PotentialTable, from_code: str, to_code: str) -> float:
    """Cross rate implied by a table: ``to`` units per 1 ``from`` unit.

    Defined as exp(potential(from) - potential(to)), hence always positive
    and exactly telescoping: rate(a, c) == rate(a, b) * rate(b, c).
    """
    return math.exp(table.potential(from_code) - table.potential(to_code))


def potential_from_rate(rate_to_reference: float) -> float:
    """Potential of a currency quoted directly against the reference.

    Inverse of :func:`rate_from_potentials` with the reference pinned at 0:
    a currency worth ``rate`` reference units has potential ln(rate).
    """
    rate = require_positive(rate_to_reference, "rate")
    return math.log(rate)


def attractiveness_score(potential: float, cfg: ScaleConfig = ScaleConfig()) -> float:
    """Map a potential onto the bounded attractiveness scale.

    clamp(midpoint + gain * potential, lower, upper); potential 0 scores
    exactly the midpoint.
    """
    value = require_finite(potential, "potential")
    raw = cfg.midpoint + cfg.gain * value
    return min(max(raw, cfg.lower), cfg.upper)


def rank_series(table: PotentialTable) -> list[SeriesEntry]:
    """Rank a table ascending by potential into a currency series.

    Ties are broken by lexicographic code order so the output is
    deterministic. The reference (and any other zero-potential entry)
    classifies as :attr:`Polarity.REFERENCE`.
    """
    ordered = sorted(table.entries.items(), key=lambda item: (item[1], item[0]))
    return [
        SeriesEntry(code=code, potential=value, polarity=classify_polarity(value))
        for code, value in ordered
    ]
