"""Exception hierarchy for grament."""


class GramentError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(GramentError, ValueError):
    pass


class ConvergenceError(GramentError, ArithmeticError):
    """An iterative decomposition hit its sweep cap."""


class NotHermitianError(GramentError, ValueError):
    pass


class NotPositiveDefiniteError(GramentError, ValueError):
    """Raised by the strict Cholesky factorization; use ``cholesky_psd0`` for singular input."""


class NotPSDError(GramentError, ValueError):
    pass


class InvalidDensityMatrixError(GramentError, ValueError):
    pass


class NotNormalizedError(GramentError, ValueError):
    pass


class ZeroStateError(GramentError, ValueError):
    pass


class OrientationError(GramentError, ValueError):
    pass


class NotAContractionError(GramentError, ValueError):
    pass


class GramMismatchError(GramentError, ValueError):
    """Two frames (or states) do not share a Gram matrix, so no unitary relates them.

    ``distance`` holds the Frobenius distance between the two Gram matrices.
    """

    def __init__(self, message, distance):
        super().__init__(message)
        self.distance = distance


class FileFormatError(GramentError, ValueError):
    pass
