# src/anumrad/errors.py

"""Exception hierarchy for the anumrad package.

Dedicated classes (rather than bare ValueError) so callers can tell
validation failures apart from genuine numerical breakdowns.
"""


class AnumradError(Exception):
    """Base class for all anumrad errors."""


class DimensionMismatch(AnumradError):
    """Operands have incompatible shapes."""


class NotHermitian(AnumradError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPSD(AnumradError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class NoConvergence(AnumradError):
    """An iterative spectral routine failed to converge."""


class NoAdjoint(AnumradError):
    """The operator does not admit an adjoint with respect to the metric A."""


class NotAPositive(AnumradError):
    """The operator is not A-positive."""


class UnsupportedExponent(AnumradError):
    """Non-integer operator power requested on a degenerate (singular A) frame."""


class EmptyRange(AnumradError):
    """The metric A has rank zero, so A-gauges are undefined."""


class RequiresStrictPositivity(AnumradError):
    """The requested construction is only valid for strictly positive A."""


class UnknownCheckId(AnumradError):
    """No check with this id exists in the registry."""


class BadRank(AnumradError):
    """Requested rank is out of range for the matrix dimension."""


class ReproMismatch(AnumradError):
    """A hard-coded reference quantity did not reproduce. Names the quantity."""
