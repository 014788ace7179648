"""
Parameter validation utilities.
"""

import math
import numbers

from app.errors import InvalidParameterError


def require_int_at_least(name: str, value: int, minimum: int) -> int:
    """
    Check that an integer parameter is at least `minimum`.

    Args:
        name: Parameter name used in the error message
        value: Value to check
        minimum: Smallest accepted value

    Returns:
        The value, unchanged

    Raises:
        InvalidParameterError: If value is not an int or is below minimum
    """
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def require_finite(name: str, value: float, minimum: float = -math.inf) -> float:
    """
    Check that a real parameter is finite and at least `minimum`.

    Raises:
        InvalidParameterError: If value is NaN, infinite or below minimum
    """
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


def require_choice(name: str, value: str, choices) -> str:
    """
    Check that a string parameter is one of `choices`.

    Raises:
        InvalidParameterError: If value is not allowed
    """
    if value not in choices:
        allowed = ', '.join(sorted(choices))
        raise InvalidParameterError(f"{name} must be one of {allowed}, got {value!r}")
    return value
