"""Exception types raised across the package."""


class GreedyMatchingError(Exception):
    """Base class for all package errors."""


class InputError(GreedyMatchingError, ValueError):
    """Malformed input: bad graph, matching, formula or file contents."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(InputError):
    """An algorithm was called on an input outside its domain."""


class NotABushGraphError(InputError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class BudgetExceededError(GreedyMatchingError):
    """A desk-scale search ran past its state budget.

    ``best`` holds the best value found so far (a lower bound when the search
    maximizes) and ``witness`` the matching achieving it, if any.
    """

    def __init__(self, message, explored=0, best=None, witness=None):
        super().__init__(message)
        self.explored = explored
        self.best = best
        self.witness = witness
        self.lower_bound = best is not None


class LimitExceededError(GreedyMatchingError):
    def __init__(self, message, partial_count):
        super().__init__(message)
        self.partial_count = partial_count


class BoundViolationError(GreedyMatchingError, AssertionError):
    """A proven approximation bound failed on a concrete run."""
