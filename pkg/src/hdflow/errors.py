"""Exception types raised across the package."""


class HdflowError(Exception):
    """Base class for all package errors."""


class NotPrimeError(HdflowError, ValueError):
    pass


class NotIrreducibleError(HdflowError, ValueError):
    pass


class NotMonicError(HdflowError, ValueError):
    pass


class OutOfRangeError(HdflowError, ValueError):
    pass


class CtxMismatchError(HdflowError, ValueError):
    """Operands live in different fields."""


class CharMismatchError(HdflowError, ValueError):
    """Field characteristic differs from the polynomial's prime."""


class BothZeroError(HdflowError, ValueError):
    """gcd(0, 0) is undefined."""


class NotSquareError(HdflowError, ValueError):
    """Determinant requested for a non-square matrix."""


class ShapeMismatchError(HdflowError, ValueError):
    pass


class ExactDivisionFailed(HdflowError, ArithmeticError):
    """A division expected to be exact left a remainder.

    Seeing this means an arithmetic bug, not bad input.
    """


class IndexOutOfRangeError(HdflowError, IndexError):
    pass


class UnsupportedPrimeError(HdflowError, ValueError):
    pass


class DegenerateBasePointError(HdflowError, ValueError):
    """Base point x-coordinate lies in {0, 1, lambda} or at infinity."""


class IndeterminateError(HdflowError, ArithmeticError):
    """Both determinants of a ratio vanish."""


class SignResolutionFailed(HdflowError, ArithmeticError):
    pass


class PointNotOnCurveError(HdflowError, ValueError):
    pass


class FieldTooLargeError(HdflowError, ValueError):
    pass


class UnsupportedModeError(HdflowError, ValueError):
    pass


class BoundExceededError(HdflowError, ValueError):
    pass


class InternalError(HdflowError, RuntimeError):
    pass
