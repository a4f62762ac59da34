"""Exception types raised across the package.

Everything derives from :class:`TilebenchError` so callers can catch the
package's failures with one handler while tests pin down the exact kind.
"""


class TilebenchError(Exception):
    """Base class for all tilebench errors."""


class InvalidDimensionError(TilebenchError, ValueError):
    """A dimension that must be a positive integer is not."""


class InvalidRangeError(TilebenchError, ValueError):
    """A numeric range with lo > hi, or a parameter outside its domain."""


class ShapeError(TilebenchError, ValueError):
    """Operand shapes are incompatible for the requested operation."""


class InvalidConfigError(TilebenchError, ValueError):
    """A run/tile/pool configuration violates its invariants."""


class BackendConflictError(TilebenchError, ValueError):
    """A backend name is already registered."""


class UnknownBackendError(InvalidConfigError):
    """A backend name does not resolve against the registry."""


class TrialError(TilebenchError, RuntimeError):
    """A benchmark trial failed; carries the backend name and the cause."""

    def __init__(self, backend: str, message: str):
        self.backend = backend
        super().__init__(f"backend {backend!r}: {message}")


class RecordsParseError(TilebenchError, ValueError):
    """A records file is malformed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RecordValidationError(TilebenchError, ValueError):
    """A record is well-formed but violates an invariant (e.g. seconds <= 0)."""


class InsufficientDataError(TilebenchError, ValueError):
    """A sample is too short for the requested statistic."""


class InsufficientGroupsError(TilebenchError, ValueError):
    """Fewer than two groups were supplied to a multi-group test."""


class DegenerateVarianceError(TilebenchError, ValueError):
    """A group has zero variance, which would give it infinite weight."""
