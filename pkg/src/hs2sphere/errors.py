"""Exception types raised by the library.

Every domain-specific failure derives from :class:`HS2Error` so callers can
catch the whole family at once.  Precondition violations that have a natural
builtin analogue also derive from ``ValueError``.
"""


class HS2Error(Exception):
    """Base class for all library-specific errors."""


class NonZeroMeanError(HS2Error, ValueError):
    """Input to the inverse Laplacian has a mean above tolerance."""


class NotMonotoneError(HS2Error, ValueError):
    """A circle map expected to be an increasing diffeomorphism is not."""


class NotUnitNormError(HS2Error, ValueError):
    """A sphere point is too far from unit L2 norm to be renormalized."""


class NotTangentError(HS2Error, ValueError):
    """A vector fails the tangency condition at its base point."""


class VanishingModulusError(HS2Error, ValueError):
    """A complex function that must be nowhere zero has a near-zero value."""


class UnwrapAmbiguityError(HS2Error, ValueError):
    """Adjacent-node phase jump exceeds pi/2; unwrapping is ill-posed."""


class ZeroTangentError(HS2Error, ValueError):
    """Exponential map called on a (numerically) zero tangent vector."""


class AntipodalOrIdentityError(HS2Error, ValueError):
    """Log map at the sphere base point has no unique preimage at +-1."""


class AtPoleError(HS2Error, ValueError):
    """Stereographic projection evaluated at its excluded pole."""


class ProportionalPointsError(HS2Error, ValueError):
    """Segment query on points f, g with f = +-g (no unique great circle)."""


class ZeroDataError(HS2Error, ValueError):
    """Initial data with zero energy defines no geodesic."""


class BeyondBlowupError(HS2Error, ValueError):
    """Evaluation time at or past the maximal existence time."""

    def __init__(self, message, blowup_report=None):
        super().__init__(message)
        self.blowup_report = blowup_report


class StepBlowupError(HS2Error, RuntimeError):
    """Time stepping halted because the solution gradient exploded.

    Carries the partial trajectory and the last stable time so callers can
    inspect the run up to the halt.
    """

    def __init__(self, message, trajectory=None, halt_time=None):
        super().__init__(message)
        self.trajectory = trajectory
        self.halt_time = halt_time


class AtIdentityOrAntipodeError(HS2Error, ValueError):
    """Group log map at (id, 0) or (id, 2pi): infinitely many directions."""


class DegeneratePlaneError(HS2Error, ValueError):
    """Sectional curvature requested for linearly dependent vectors."""


class ZeroAtBasePointError(HS2Error, ValueError):
    """Projective canonicalization needs f(0) != 0."""


class ZeroAtChartPointError(HS2Error, ValueError):
    """Projective chart evaluated where the representative vanishes."""


class BaseMismatchError(HS2Error, ValueError):
    """Two tangent vectors expected at the same base point are not."""
