"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (bad input, exit
code 2 on the command line) and :class:`DegeneracyError` (the numerics broke
down, exit code 3).
"""


class DeblurError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DeblurError, ValueError):
    """Input rejected before any numerical work was attempted."""


class EmptyInputError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class SizeError(ValidationError):
    pass


class UnsupportedPsfError(ValidationError):
    pass


class ParameterError(ValidationError):
    pass


class IncompatibleSmootherError(ValidationError):
    pass


class FormatError(ValidationError):
    """Malformed signal, image or PSF file."""


class DegeneracyError(DeblurError, ArithmeticError):
    """A numerical quantity needed by the algorithm is singular or zero."""


class DegenerateTransformError(DegeneracyError):
    pass


class DegenerateGcvError(DegeneracyError):
    pass


class NumericalError(DegeneracyError):
    pass
