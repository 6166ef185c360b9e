"""Exception types shared across the package."""


class PinchLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PinchLabError, ValueError):
    """A radius, level, or window lies outside the metric's valid domain."""


class NonparabolicityError(PinchLabError, ValueError):
    """The warp tail decays too slowly for a positive exterior potential.

    Raised when the tail exponent is <= 1/2, in which case the integral of
    f^-2 diverges and no harmonic function with boundary value 1 can decay
    to zero at infinity.
    """


class NumericError(PinchLabError, ArithmeticError):
    """A numerical procedure lost too much accuracy to be trusted."""


class UsageError(PinchLabError, ValueError):
    """Bad configuration or command-line input (maps to exit code 64)."""
