"""Exception hierarchy shared by every engine module."""


class SegreKitError(Exception):
    """Base class for all errors raised by segrekit."""


class ParseError(SegreKitError):
    """Malformed input text.  ``pos`` is a 0-based character offset, ``line`` 1-based when known."""

    def __init__(self, message, pos=None, line=None):
        self.message = message
        self.pos = pos
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"col {pos + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class RingMismatchError(SegreKitError, ValueError):
    pass


class NotHomogeneousError(SegreKitError, ValueError):
    pass


class BudgetExceededError(SegreKitError):
    """A configured resource cap (basis size, degree) was hit."""


class GenericityError(SegreKitError):
    """Random choices were not generic enough; retry with another seed."""


class NotZeroDimensionalError(SegreKitError, ValueError):
    pass


class ConsistencyError(SegreKitError):
    """Two independent derivations of the same quantity disagree."""
