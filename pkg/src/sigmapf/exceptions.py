"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`SigmaPFError`, itself a :class:`ValueError`, so callers can catch
the whole family or a single condition.
"""


class SigmaPFError(ValueError):
    """Base class for all package errors."""


class PreconditionError(SigmaPFError):
    """A mathematical precondition of an operation is not met."""


# shape partitions
class NotAPartition(SigmaPFError):
    pass


class DimensionMismatch(SigmaPFError):
    pass


class OrderingViolation(SigmaPFError):
    pass


class OrderMismatch(SigmaPFError):
    pass


# tensors and block vectors
class ShapeMismatch(SigmaPFError):
    pass


class BadMode(SigmaPFError):
    pass


class BadExponent(SigmaPFError):
    pass


class NegativeEntry(SigmaPFError):
    pass


class ZeroBlock(PreconditionError):
    pass


class NotNormalized(PreconditionError):
    pass


# maps and solver
class NotStrictlyNonnegative(PreconditionError):
    pass


class NonPositiveInput(PreconditionError):
    pass


class NonPositiveStart(PreconditionError):
    pass


class RateNotApplicable(PreconditionError):
    pass


class PartialOrderViolation(PreconditionError):
    pass


class ExponentMismatch(PreconditionError):
    pass


class TooLarge(SigmaPFError):
    pass


class NotAMatrix(SigmaPFError):
    pass


class ParseError(SigmaPFError):
    """Malformed tensor, partition or vector input."""
