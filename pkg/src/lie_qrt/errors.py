"""
Exception hierarchy for the Lie-algebra QRT laboratory.
Maps failure classes onto the CLI exit statuses.
"""

from typing import Optional


class LieQRTError(Exception):
    """Base class for all laboratory errors."""


class InvalidInputError(LieQRTError, ValueError):
    """Raised for non-finite entries or out-of-range parameters."""


class DimensionMismatchError(InvalidInputError):
    """Raised when operator or vector sizes are incompatible."""


class NormalizationError(InvalidInputError):
    """Raised for unnormalized states, bad traces or annihilated states."""


class DependentSetError(LieQRTError, ValueError):
    """Raised when Gram-Schmidt meets a linearly dependent operator."""


class SingularMatrixError(LieQRTError, ValueError):
    """Raised when an operator falls below the invertibility threshold."""


class UsageError(LieQRTError):
    """Raised for command-line usage problems."""


class InvariantViolationError(LieQRTError):
    """Raised when a hard invariant of an experiment fails."""


class MarginViolationError(InvariantViolationError):
    """Raised when an average-purity margin falls below tolerance."""

    def __init__(self, trial: int, margin: float, tolerance: float):
        self.trial = trial
        self.margin = margin
        self.tolerance = tolerance
        super().__init__(
            f"average purity decreased in trial {trial}: margin={margin:.3e} < -{tolerance:.1e}"
        )


class NumericalError(LieQRTError, ArithmeticError):
    """Raised when an experiment produces non-finite values."""


EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_NUMERICAL = 3


def exit_status_for(exc: Optional[BaseException]) -> int:
    """
    Map an exception onto a CLI exit status.

    Args:
        exc: Exception raised by a command, or None on success

    Returns:
        Exit status (0 success, 1 usage, 2 invariant, 3 numerical)
    """
    if exc is None:
        return EXIT_SUCCESS
    if isinstance(exc, InvariantViolationError):
        return EXIT_INVARIANT
    if isinstance(exc, (NumericalError, FloatingPointError)):
        return EXIT_NUMERICAL
    if isinstance(exc, (UsageError, InvalidInputError)):
        return EXIT_USAGE
    return EXIT_NUMERICAL
