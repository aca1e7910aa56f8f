"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument is outside an operation's domain."""


class DomainError(InvalidInputError):
    """A formula is undefined at the given argument (e.g. x = 0)."""


class DegenerateCubicError(InvalidInputError):
    """The defining cubic degenerates (the edge root is undefined at c = 1)."""


class PoleOnContourError(InvalidInputError):
    """|u| = 1 places an integrand pole exactly on the unit contour."""


class AccuracyError(RuntimeError):
    """Quadrature could not reach the requested tolerance.

    The best available estimate is kept in ``estimate``.
    """

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


class NonHermitianError(ValueError):
    """Input matrix violates the Hermitian contract of the eigensolver."""


class ConstructionMismatchError(RuntimeError):
    """The outer-product and band-matrix constructions disagree."""


class ResourceLimitError(ValueError):
    """Requested simulation exceeds the configured dense-matrix cap."""
