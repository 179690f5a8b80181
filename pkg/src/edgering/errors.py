"""Exception types. Each maps to one CLI exit code."""


class EdgeRingError(Exception):
    exit_code = 1


class InputError(EdgeRingError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 3


class InvariantViolation(EdgeRingError):
    """A cross-check between two independent computations failed."""

    exit_code = 2


class ResourceGuardError(EdgeRingError):
    """An enumeration would exceed its configured size cap."""

    exit_code = 4
