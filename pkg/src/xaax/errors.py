"""Exception types and outcome markers shared across the package."""


class XaaxError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(XaaxError):
    pass


class ShapeMismatch(XaaxError):
    pass


class NotStrictlyUpper(XaaxError):
    pass


class IndexOutOfRange(XaaxError):
    pass


class IncompleteSpectrum(XaaxError):
    """Raised when the generalized eigenspaces of the supplied eigenvalues
    do not fill the whole space."""


class SpectrumRequired(XaaxError):
    """A non upper triangular matrix was given without an eigenvalue list."""


class SpectrumNotPoint(XaaxError):
    """``X - alpha*I`` is not nilpotent, so the truncated Taylor sum is not f(X)."""


class FirstCoefficientZero(XaaxError):
    pass


class VariableMismatch(XaaxError):
    pass


class ZeroDerivative(XaaxError):
    pass


class NotCriticalError(XaaxError):
    """The critical-case solver was handed a spec with f'(alpha) != 0."""


class DerogatoryInput(XaaxError):
    pass


class ConstraintViolation(XaaxError):
    pass


class PivotFailure(XaaxError):
    def __init__(self, row, diagonal, block=None):
        self.row = row
        self.diagonal = diagonal
        self.block = block
        where = f" in block {block}" if block is not None else ""
        super().__init__(
            f"vanishing pivot at row {row}, false diagonal {diagonal}{where}")


class PreconditionFailed(XaaxError):
    pass


class Unsupported(XaaxError):
    pass


class ParseError(XaaxError):
    pass


class _Marker:
    """Named singleton used for non-exceptional outcomes."""

    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __bool__(self):
        return False


INCONSISTENT = _Marker("Inconsistent")
NOT_CRITICAL = _Marker("NotCritical")
FLAT = _Marker("Flat")
NOT_INVERTIBLE = _Marker("NotInvertible")
