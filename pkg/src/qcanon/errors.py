"""Exception types raised by the algorithms."""


class QCanonError(Exception):
    """Base class for domain errors (a precondition of an algorithm failed)."""


class SingularInput(QCanonError):
    pass


class NoConvergence(QCanonError):
    pass


class NotAnEigenvalue(QCanonError):
    pass


class BadShape(QCanonError):
    pass


class ShapeMismatch(BadShape):
    pass


class NonRealSpectrum(QCanonError):
    pass


class NotIdempotent(QCanonError):
    pass


class NotSquareZero(QCanonError):
    pass


class Derogatory(QCanonError):
    pass


class ChainFailure(QCanonError):
    """A Jordan chain or similarity could not be built to the requested accuracy."""


class InternalOrderViolation(QCanonError):
    pass


class NotBlockDiagonal(QCanonError):
    pass


class MatrixFormatError(ValueError):
    """Input does not follow the JSON matrix format."""
