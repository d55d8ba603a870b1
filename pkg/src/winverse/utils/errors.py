class WinverseError(Exception):
    """Base class for every error raised by winverse."""

    def __init__(self, message):
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return self.message


class ShapeError(WinverseError, ValueError):
    """Operands are not conformable."""


class WeightError(WinverseError, ValueError):
    """The weight matrix W is zero."""


class IndexConditionError(WinverseError, ValueError):
    """An inverse that needs index <= 1 was requested for a matrix of larger index."""


class SingularBlockError(WinverseError, ValueError):
    """A block required to be nonsingular is numerically singular."""


class DecompositionError(WinverseError, RuntimeError):
    """A factorization could not be completed under the current tolerance."""


class SolveError(WinverseError, RuntimeError):
    """An assembled solution does not satisfy its equation."""


class MatrixFileError(WinverseError, ValueError):
    """A matrix file is missing or malformed."""


class DispatchError(WinverseError):
    """Unknown command or invalid usage on the command line."""
