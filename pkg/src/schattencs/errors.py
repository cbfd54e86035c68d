"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`SchattenError`, so callers can catch the whole family at once.
Numerical precondition failures also derive from :class:`ValueError`.
"""


class SchattenError(Exception):
    """Base class for all package errors."""


class NotHermitian(SchattenError, ValueError):
    pass


class NotPSD(SchattenError, ValueError):
    pass


class SingularPower(SchattenError, ValueError):
    pass


class BadExponent(SchattenError, ValueError):
    pass


class DimensionMismatch(SchattenError, ValueError):
    pass


class ConvergenceFailure(SchattenError, ArithmeticError):
    pass


class CountTooLarge(SchattenError, ValueError):
    pass


class IndexOutOfRange(SchattenError, IndexError):
    pass


class SingularGram(SchattenError, ArithmeticError):
    pass


class OrderTooLarge(SchattenError, ValueError):
    pass


class NotContraction(SchattenError, ValueError):
    pass


class NoConvergence(SchattenError, ArithmeticError):
    """Fixed-point iteration stopped before reaching its tolerance.

    The last iterate and its residual are kept for inspection.
    """

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class WeightOverflow(SchattenError, OverflowError):
    pass


class NotHypercontractive(SchattenError, ValueError):
    """A (co)hypercontractivity predicate failed at some order."""

    def __init__(self, message, order=None, margin=None, side=None):
        super().__init__(message)
        self.order = order
        self.margin = margin
        self.side = side


class PreconditionUnmet(SchattenError, ValueError):
    pass


class VariantUnknown(SchattenError, KeyError):
    pass


class BadTriple(SchattenError, ValueError):
    pass


class CaseExponentMismatch(SchattenError, ValueError):
    pass


class BadSubstitution(SchattenError, ValueError):
    pass


class NotOrthonormal(SchattenError, ValueError):
    pass


class SamplerExhausted(SchattenError, RuntimeError):
    """Rejection sampling hit its attempt cap."""

    def __init__(self, message, acceptance_rate=None):
        super().__init__(message)
        self.acceptance_rate = acceptance_rate


class ConfigInvalid(SchattenError, ValueError):
    pass


class IoFailure(SchattenError, OSError):
    pass


class MatrixFileError(SchattenError, ValueError):
    """Malformed matrix interchange file."""
