"""Exception hierarchy.

Every error raised on bad input derives from :class:`SpinhafError`, itself a
``ValueError``, so callers can catch one type at the CLI boundary.
"""


class SpinhafError(ValueError):
    """Base class for input and validation errors."""


class DimensionError(SpinhafError):
    """Shape mismatch: non-square matrix, wrong vector length, width mismatch."""


class ParityError(SpinhafError):
    """An even dimension or even subset size was required."""


class SizeLimitError(SpinhafError):
    """Input exceeds a guard on enumeration size or memory."""


class SymmetryError(SpinhafError):
    """Matrix is not exactly symmetric."""


class DomainError(SpinhafError):
    """Argument outside the domain of the operation."""


class DegenerateSectorError(SpinhafError):
    """A postselected sector carries zero probability mass."""
