"""Exception and warning types shared across the package."""


class TwistorError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatchError(TwistorError, ValueError):
    pass


class DegenerateInputError(TwistorError, ValueError):
    pass


class PreconditionError(TwistorError, ValueError):
    pass


class ConstructionError(TwistorError, ValueError):
    pass


class DomainError(TwistorError, ValueError):
    pass


class ResolutionError(TwistorError, ArithmeticError):
    """A vanishing order could not be resolved in double precision."""


class PivotError(TwistorError, ArithmeticError):
    def __init__(self, entry, value):
        super().__init__(f"pivot {entry} vanishes (|{entry}| = {abs(value):.3e})")
        self.entry = entry
        self.value = value


class ConsistencyError(TwistorError, ArithmeticError):
    """An identity that must hold by construction was violated numerically."""


class QuadratureAccuracyError(TwistorError, ArithmeticError):
    def __init__(self, coarse, fine, tol):
        super().__init__(
            f"quadrature did not converge: {coarse!r} vs {fine!r} (tol {tol:g})")
        self.coarse = coarse
        self.fine = fine
        self.tol = tol


class DocumentError(TwistorError, ValueError):
    """Malformed curve document."""


class DegenerationWarning(UserWarning):
    """Parameters lie on a locus where the curve drops degree."""
