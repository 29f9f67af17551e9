"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TmGapsError(Exception):
    """Base class for every error raised by this package."""


class AlphabetMismatch(TmGapsError, ValueError):
    pass


class BudgetExceeded(TmGapsError):
    """A stream or scan would have to grow past its configured budget."""

    def __init__(self, needed: int, budget: int, what: str = "stream"):
        super().__init__(f"{what} needs {needed} letters, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NotProlongable(TmGapsError, ValueError):
    pass


class NotAFactor(TmGapsError):
    pass


class UnsupportedLength(TmGapsError, ValueError):
    pass


class ParseError(TmGapsError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class InvalidMatching(TmGapsError, ValueError):
    def __init__(self, clause: str, indices: tuple):
        super().__init__(f"non-crossing matching violated: {clause} at {indices}")
        self.clause = clause
        self.indices = indices


class TransducerError(TmGapsError, ValueError):
    pass
