"""Loss-free parsing and printing of rational scalars.

All numeric input enters the package through :func:`parse_rational`; floats
are rejected so that no binary rounding can ever leak into the exact
arithmetic downstream.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputValidationError


def parse_rational(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an int, a "p/q" string, or a decimal string.

    "0.25" parses to 1/4 exactly; "3/2", "-7", and plain ints are accepted.
    Floats are refused: a binary float does not determine the decimal the
    user wrote.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputValidationError(f"expected a rational number, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputValidationError(
            f"float literal {value!r} is not exact; write it as a string, e.g. \"1/3\" or \"0.25\""
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputValidationError(f"cannot parse rational from {value!r}: {exc}") from None
    raise InputValidationError(f"cannot parse rational from {type(value).__name__} {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a rational as "p" or "p/q"; round-trips through parse_rational."""
    return str(value)
