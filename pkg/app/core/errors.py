"""
Exception hierarchy shared by the core modules and the CLI.
"""


class KJBError(Exception):
    """Base class for every error raised by the toolkit."""


class ShapeError(KJBError, ValueError):
    """Operands have incompatible dimensions."""


class DomainError(KJBError, ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedFactorError(DomainError):
    """A factor descriptor is outside every supported case."""


class ParseError(KJBError, ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class PreconditionError(KJBError, ValueError):
    """A documented precondition does not hold (e.g. a scale inequality)."""


class GridVerificationError(KJBError):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class DeltaNotStabilizedError(KJBError):
    """The sampling oracle kept discovering classes until the budget ran out."""


class InvariantBreachError(KJBError):
    """An internal cross-check failed; this indicates a bug, not bad input."""
