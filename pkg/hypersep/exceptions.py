"""
Exceptions raised by hypersep.

Invalid arguments to the pure functions raise :class:`ValueError`; the classes
below cover the conditions callers are expected to handle.
"""


class HypersepError(Exception):
    """Base class for hypersep errors."""


class ParseError(HypersepError):
    """A text file does not follow its format."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(HypersepError):
    """An exhaustive enumeration would exceed its configured budget."""


class SatisfiableInstance(HypersepError):
    """A refuter was handed a satisfiable instance."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
