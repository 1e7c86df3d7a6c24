"""Exception hierarchy shared by all omnirate modules."""


class OmnirateError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OmnirateError, ValueError):
    """An argument violates a documented precondition (bad subset, bad alpha, ...)."""


class CapacityError(OmnirateError):
    """The instance is too large for an exhaustive code path."""


class SolverError(OmnirateError):
    """An iterative solver failed to converge within its iteration cap."""


class InternalError(OmnirateError):
    """An internal invariant failed; indicates a bug upstream of the raise site."""


class DecompositionError(OmnirateError):
    """A supplied global rate vector is incompatible with a local-omniscience plan."""


class ModelFormatError(OmnirateError, ValueError):
    """A source-model file failed to parse or is structurally invalid.

    ``line`` is the 1-based line number the problem was detected on, or
    ``None`` for whole-file problems.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
