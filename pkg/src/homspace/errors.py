"""Exception hierarchy.

Everything derived from :class:`MathSignal` is a mathematical outcome (a
violated divisibility, a pole, an exceeded budget) rather than a usage
mistake; the CLI maps those to exit code 1 and :class:`UsageError`
subclasses to exit code 2.
"""


class HomspaceError(Exception):
    pass


class MathSignal(HomspaceError):
    pass


class UsageError(HomspaceError):
    pass


class NotDivisible(MathSignal):
    pass


class DivisionByZero(MathSignal, ZeroDivisionError):
    pass


class PoleAtZero(MathSignal):
    pass


class PoleRemains(MathSignal):
    pass


class PoleAtPoint(MathSignal):
    pass


class NonNegativityViolated(MathSignal):
    pass


class NegativeCoefficient(MathSignal):
    pass


class NotPolynomial(MathSignal):
    pass


class InternalInconsistency(MathSignal):
    pass


class CapExceeded(MathSignal):
    def __init__(self, predicted, cap):
        super().__init__(f"predicted group order {predicted} exceeds cap {cap}")
        self.predicted = predicted
        self.cap = cap


class SearchSpaceTooLarge(MathSignal):
    pass


class NonIntegerQuotient(MathSignal):
    pass


class NotRealizable(MathSignal):
    pass


class InvalidPair(MathSignal):
    pass


class ParseError(UsageError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InvalidRank(UsageError):
    pass
