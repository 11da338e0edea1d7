"""Exception types shared across the package.

Validation problems (bad arguments, malformed files, incompatible shapes)
raise plain ``ValueError`` subclasses so callers can catch them uniformly;
``NumericalError`` marks computations that were set up correctly but could
not be carried out to the required accuracy.
"""


class WaveidError(ValueError):
    """Base class for argument and data validation failures."""


class FormatError(WaveidError):
    """A file or text spec could not be parsed."""


class NumericalError(RuntimeError):
    """A numerically ill-posed computation (singular or near-singular
    systems, failed calibration, non-finite intermediate results)."""
