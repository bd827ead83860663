"""Errors raised by the curve computations.

Every error carries the process exit code the management commands return when
it escapes to the command line.
"""


class CurveError(Exception):
    exit_code = 5


class PolynomialParseError(CurveError):
    exit_code = 1


class NonHomogeneousError(PolynomialParseError):
    pass


class ZeroCurveError(PolynomialParseError):
    pass


class NonReducedError(CurveError):
    exit_code = 2

    def __init__(self, message, square_degree):
        super().__init__(message)
        self.square_degree = square_degree


class UnsupportedClassificationError(CurveError):
    exit_code = 3


class LineComponentError(CurveError):
    exit_code = 4


class InternalInconsistencyError(CurveError):
    """A proved identity failed numerically: the implementation is wrong."""
    exit_code = 5


class InvalidParameterError(CurveError, ValueError):
    """A numeric option such as a degree bound or a sample count is out of range."""
    exit_code = 1
