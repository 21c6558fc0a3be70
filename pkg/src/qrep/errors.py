"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QrepError(Exception):
    """Base class for every error raised by :mod:`qrep`."""


class InvalidParameter(QrepError, ValueError):
    """A user-supplied parameter is outside the accepted domain."""


class InternalError(QrepError):
    """An internal invariant failed; indicates a bug, never bad input."""


class StructureError(QrepError):
    """The block graph violates the one-block-per-direction rule."""


class ShapeError(QrepError):
    """Block dimensions disagree with the spectra table."""


class NumericError(QrepError):
    """Base for failures of the numeric Gram recursion.

    ``location`` carries the offending ``(level, alpha_exp)`` node when known.
    """

    def __init__(self, message: str, location: tuple[int, int] | None = None):
        if location is not None:
            message = f"{message} at (level, class) = {location}"
        super().__init__(message)
        self.location = location


class RankError(NumericError):
    """Stacked Gram matrix rank differs from the weight multiplicity."""


class NegativeEigenvalue(NumericError):
    """Stacked Gram matrix is not positive semidefinite within tolerance."""


class ConsistencyError(NumericError):
    """A relation that should hold automatically failed after assembly."""


class RoundingError(NumericError):
    """A recovered Cartan eigenvalue is not an integer."""


class CapExceeded(QrepError):
    """The oracle was asked for a module larger than its dimension cap."""


class NumericalRankAmbiguity(NumericError):
    """Gram eigenvalues sit too close to the rank-decision threshold."""


class DimensionMismatch(QrepError, ValueError):
    """Two representations being compared have different dimensions."""
