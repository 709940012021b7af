"""Exception types raised by the library."""

from __future__ import annotations


class ExpSplineError(Exception):
    """Base class for all library errors."""


class NotSymmetric(ExpSplineError):
    """Root vector is not closed under negation, so no real symmetric
    interpolator exists for it."""


class OrderTooLow(ExpSplineError):
    """Interpolator construction needs at least three roots."""


class SingularSystem(ExpSplineError):
    """Interpolation system is numerically singular or too ill-conditioned
    to solve reliably."""


class ReproductionConditionViolated(ExpSplineError):
    """The coefficient sequence annihilates one of the exponential
    generators, so reproduction of that generator is impossible."""


class DegenerateFrame(ExpSplineError):
    """Estimated Riesz lower bound collapsed to zero; the shifted basis
    functions are not a stable basis."""


class OddFactor(ExpSplineError):
    """The first refinement step requires an even grid factor."""


class UnknownShape(ExpSplineError):
    """Requested preset name is not registered."""


class IndexOutOfRange(ExpSplineError):
    """Control point index is outside the net."""
