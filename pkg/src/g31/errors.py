"""Exception hierarchy shared by all modules."""


class G31Error(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(G31Error, ValueError):
    """An argument is outside the domain of the operation."""


class ConstructionUndefinedError(G31Error, ValueError):
    """The requested construction has no valid parameters for (n, l)."""


class NotIndependentError(G31Error, ValueError):
    """A vertex set expected to be independent contains an edge."""


class DecompositionError(G31Error):
    """An independent set could not be split into type-1/2/3 blocks.

    ``offending`` holds the vertices that could not be placed.
    """

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class InvariantViolation(G31Error, AssertionError):
    """A predicted count disagrees with a direct count."""
