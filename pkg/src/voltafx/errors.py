"""Exception types shared across the package.

Everything derives from :class:`ExchangeModelError` so callers (and the CLI)
can catch one base class. Subclasses also inherit the matching builtin where
one exists, so ``except ValueError`` keeps working for plain callers.
"""

from __future__ import annotations


class ExchangeModelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExchangeModelError, ValueError):
    """An input value is outside the mathematical domain of an operation."""


class ConfigurationError(ExchangeModelError, ValueError):
    """A configuration object violates its own invariants."""


class UnknownCurrencyError(ExchangeModelError, KeyError):
    """A currency code was looked up in a table that does not contain it."""


class ValidationError(ExchangeModelError, ValueError):
    """Structured input (CSV, JSON document, quote set) failed validation.

    ``errors`` carries every individual problem found, so callers can report
    all of them at once instead of fixing one at a time.
    """

    def __init__(self, message: str, errors: list[str] | None = None):
        super().__init__(message)
        self.errors: list[str] = errors if errors is not None else []


class DisconnectedGraphError(ExchangeModelError, ValueError):
    """The exchange graph does not connect every currency to the reference.

    ``components`` lists the groups of currency codes that cannot reach the
    reference through any quote.
    """

    def __init__(self, message: str, components: list[list[str]]):
        super().__init__(message)
        self.components = components


class SimulationStateError(ExchangeModelError, RuntimeError):
    """A simulation was driven in a way its state does not allow."""
