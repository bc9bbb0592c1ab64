"""Input validation helpers used by every other module.

These are deliberately small and stdlib-only: check one thing, raise a
package error with the offending value in the message, return the value.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError

CODE_PATTERN = re.compile(r"^[A-Z0-9]{1,8}$")


def check_currency_code(code: str) -> str:
    """Validate a currency code: 1-8 uppercase alphanumeric characters."""
    if not isinstance(code, str) or not CODE_PATTERN.match(code):
        raise DomainError(
            f"invalid currency code {code!r}: expected 1-8 uppercase "
            "alphanumeric characters"
        )
    return code


def require_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def require_positive(value: float, name: str) -> float:
    value = require_finite(value, name)
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def check_commission_fraction(fraction: float) -> float:
    fraction = require_finite(fraction, "commission fraction")
    if not 0.0 <= fraction < 1.0:
        raise DomainError(
            f"commission fraction must lie in [0, 1), got {fraction!r}"
        )
    return fraction


def require_nonnegative_int(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
    return value


def require_positive_int(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return value


def as_exact(value, name: str = "value") -> Fraction:
    """Convert a user-supplied number to an exact rational.

    Floats are read through their shortest decimal representation
    (``Fraction(str(x))``), so ``0.01`` means exactly 1/100 -- the value the
    user wrote, not its binary approximation. Exact inputs (``Fraction``,
    ``int``, numerator/denominator pairs, or strings such as ``"1/3"`` and
    ``"0.25"``) pass through unchanged.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"{name} must be a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{name} is not a valid rational: {value!r}") from exc
    if isinstance(value, tuple) and len(value) == 2:
        num, den = value
        try:
            return Fraction(num, den)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{name} is not a valid rational: {value!r}") from exc
    raise DomainError(f"{name} must be a rational number, got {value!r}")
