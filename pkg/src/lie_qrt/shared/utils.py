"""
Shared utility functions for the Lie-algebra QRT laboratory.
Parsing and validation of grid and list arguments.
"""

import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


def parse_number_list(values: str) -> Optional[List[float]]:
    """
    Parse a comma-separated list of numbers, accepting fractions like 3/2.

    Args:
        values: Comma-separated string, e.g. "0,1,3,5" or "1/2,3/2"

    Returns:
        List of floats, or None if the string is empty

    Raises:
        InvalidInputError: If an entry is not a number
    """
    if not values or not isinstance(values, str):
        return None

    items = [item.strip() for item in values.split(",") if item.strip()]
    try:
        parsed = [float(Fraction(item)) for item in items]
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Invalid number list '{values}': {e}")
    return parsed if parsed else None


def parse_grid(spec: str) -> np.ndarray:
    """
    Parse a grid of the form lo:hi:count, inclusive of both endpoints.

    Args:
        spec: Grid string, e.g. "-2:2:41"

    Returns:
        Array of count evenly spaced values

    Raises:
        InvalidInputError: If the grid string is malformed
    """
    parts = spec.split(":") if isinstance(spec, str) else []
    if len(parts) != 3:
        raise InvalidInputError(f"Grid must be lo:hi:count, got '{spec}'")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InvalidInputError(f"Invalid grid '{spec}': {e}")
    if count < 1:
        raise InvalidInputError(f"Grid count must be at least 1, got {count}")
    if count == 1 and lo != hi:
        raise InvalidInputError(f"Single-point grid needs lo == hi, got '{spec}'")
    return np.linspace(lo, hi, count)


def parse_half_integer(value: float, name: str = "value") -> Fraction:
    """
    Validate that a number is an integer or half-integer.

    Args:
        value: Number to validate
        name: Parameter name used in the error message

    Returns:
        The value as an exact Fraction

    Raises:
        InvalidInputError: If 2*value is not an integer
    """
    exact = Fraction(value).limit_denominator(4)
    if (2 * exact).denominator != 1 or abs(float(exact) - float(value)) > 1e-12:
        raise InvalidInputError(f"{name} must be an integer or half-integer, got {value}")
    return exact


def validate_positive(value: float, name: str, allow_zero: bool = False) -> float:
    """
    Validate that a parameter is positive (or nonnegative).

    Args:
        value: Parameter value
        name: Parameter name used in the error message
        allow_zero: Accept zero as valid

    Returns:
        The validated value

    Raises:
        InvalidInputError: If the value is out of range
    """
    if not np.isfinite(value) or value < 0 or (value == 0 and not allow_zero):
        bound = "nonnegative" if allow_zero else "positive"
        raise InvalidInputError(f"{name} must be {bound}, got {value}")
    return value
