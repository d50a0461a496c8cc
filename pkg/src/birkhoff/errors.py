"""Exception types raised across the package."""


class BirkhoffError(Exception):
    """Base class for all package errors."""


class SingularMatrix(BirkhoffError, ArithmeticError):
    pass


class NotNilpotent(BirkhoffError, ValueError):
    pass


class UnequalWeight(BirkhoffError, ValueError):
    pass


class ShapeMismatch(BirkhoffError, ValueError):
    pass


class ZeroModule(BirkhoffError, ValueError):
    pass


class UnsupportedField(BirkhoffError, ValueError):
    pass


class DimensionMismatch(BirkhoffError, ValueError):
    pass


class HypothesisViolated(BirkhoffError, ValueError):
    """The hypotheses of a degeneration move do not hold."""


class ExactnessFailure(BirkhoffError, AssertionError):
    """A constructed sequence failed to verify; indicates a bug."""


class NoEscapeMove(BirkhoffError):
    """A non-listed indecomposable pair admits no degeneration move."""


class ParseError(BirkhoffError, ValueError):
    def __init__(self, message, text="", position=None):
        self.reason = message
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)
