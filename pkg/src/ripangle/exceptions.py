class RipAngleError(Exception):
    """Base class for errors raised by ripangle."""


class DomainError(RipAngleError, ValueError):
    """An argument is outside the domain where a formula or routine is defined."""


class StabilityError(RipAngleError, ValueError):
    """A reconstruction bound was requested outside its stability condition."""


class EnumerationCapError(RipAngleError, ValueError):
    """Exhaustive enumeration would exceed the configured subset cap."""


class OracleConsistencyError(RipAngleError, RuntimeError):
    """The brute-force search found no feasible point where one must exist."""
