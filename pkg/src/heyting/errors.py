"""Exception hierarchy shared by all modules."""


class HeytingError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(HeytingError, ValueError):
    """Malformed arguments such as out-of-range element indices."""


class CyclicCovers(InvalidInput):
    pass


class NotALattice(InvalidInput):
    pass


class NotDistributive(InvalidInput):
    pass


class NoBoundedTop(InvalidInput):
    pass


class NoBoundedBottom(InvalidInput):
    pass


class NotComparable(InvalidInput):
    pass


class OutOfRange(InvalidInput):
    pass


class TrivialAlgebra(InvalidInput):
    pass


class NotSubdirectlyIrreducible(InvalidInput):
    pass


class NotProjectiveShape(InvalidInput):
    pass


class HeadNotZ4(InvalidInput):
    pass


class SizeLimitExceeded(HeytingError):
    pass


class SearchBudgetExceeded(HeytingError):
    """Raised when a search would exceed its evaluation budget.

    ``context`` carries whatever the caller knows about the offending query,
    for instance the algebra name and the axiom text.
    """

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context or {}


class FormulaSyntaxError(InvalidInput):
    """Parse failure; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
