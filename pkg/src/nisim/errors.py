"""Exception types shared across the package.

Everything user-facing raises one of these so callers (and the CLI) can map
failure modes to exit codes without string matching.
"""


class DimensionRangeError(ValueError):
    """Ambient dimension outside the supported range for the requested operation."""


class DimensionMismatchError(ValueError):
    """Two codes that must live on the same hypercube do not."""


class WordRangeError(ValueError):
    """A codeword does not fit in the ambient dimension."""


class EmptyCodeError(ValueError):
    """A code must contain at least one word."""


class ParameterRangeError(ValueError):
    """A scalar parameter is outside its documented domain."""


class FormatError(ValueError):
    """Malformed serialized input."""


class NumericalConsistencyError(ArithmeticError):
    """Two computation paths that must agree did not, beyond tolerance."""


class ConvergenceError(ArithmeticError):
    """An iterative optimizer exhausted its budget before reaching tolerance."""


class SearchBudgetError(RuntimeError):
    """An exhaustive search was refused because it would exceed the time budget."""
