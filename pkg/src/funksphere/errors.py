"""Exception types shared across the package."""

__all__ = [
    "FunksphereError",
    "DomainError",
    "ResolutionError",
    "NotInRangeError",
    "ConditioningError",
    "GridFileError",
]


class FunksphereError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FunksphereError, ValueError):
    """A parameter lies outside its admissible domain (shift, norm, argument)."""


class ResolutionError(FunksphereError, ValueError):
    """A grid or rule is too coarse to resolve the requested degree."""


class NotInRangeError(FunksphereError, ValueError):
    """Input violates a range condition of the operator being inverted.

    Carries ``odd_fraction``, the fraction of squared coefficient mass in
    odd degrees, when the failure was detected spectrally.
    """

    def __init__(self, message, odd_fraction=None):
        super().__init__(message)
        self.odd_fraction = odd_fraction


class ConditioningError(FunksphereError, ArithmeticError):
    """A spectral division would amplify noise past machine precision."""


class GridFileError(FunksphereError, ValueError):
    """A grid-function file is malformed or inconsistent with its header."""
