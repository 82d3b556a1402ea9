"""The unit sphere in L2 of the circle with complex values.

Points are complex functions of unit L2 norm.  The real inner product
Re integral(X conj(Y)) makes the sphere a (weak) Riemannian manifold; its
geodesics are great circles, written down explicitly at the north pole,
the constant function 1.  The nowhere-vanishing subset U is the target of
the group isometry and the arena for all segment-containment questions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AntipodalOrIdentityError,
    AtPoleError,
    NotTangentError,
    NotUnitNormError,
    ProportionalPointsError,
    ZeroTangentError,
)
from .funcspace import PeriodicFunction, PeriodicGrid

NORM_REJECT_TOL = 1e-6
MODULUS_TOL = 1e-8
POLE_TOL = 1e-8
TANGENT_TOL = 1e-10
IM_RATIO_TOL = 1e-10


class SpherePoint:
    """Complex function on the circle with unit L2 norm.

    The constructor renormalizes norm deviations below 1e-6 and rejects
    anything larger, so large violations surface as errors instead of
    being silently repaired.
    """

    __slots__ = ("f",)

    def __init__(self, f: PeriodicFunction):
        vals = np.asarray(f.values, dtype=np.complex128)
        norm = float(np.sqrt(np.mean(np.abs(vals) ** 2)))
        if abs(norm - 1.0) > NORM_REJECT_TOL:
            raise NotUnitNormError(f"L2 norm {norm!r} too far from 1")
        self.f = PeriodicFunction(f.grid, vals / norm)

    @classmethod
    def constant_one(cls, grid: PeriodicGrid) -> "SpherePoint":
        return cls(PeriodicFunction.constant(grid, 1.0 + 0.0j))

    @property
    def grid(self) -> PeriodicGrid:
        return self.f.grid

    @property
    def values(self) -> np.ndarray:
        return self.f.values

    def height(self) -> float:
        """Component along the constant function 1: Re integral(f)."""
        return float(np.mean(self.values.real))

    def min_modulus(self) -> float:
        return float(np.min(np.abs(self.values)))

    def l2_distance(self, other: "SpherePoint") -> float:
        return float(
            np.sqrt(np.mean(np.abs(self.values - other.values) ** 2))
        )

    def __repr__(self):
        return f"SpherePoint(n={self.grid.n})"


@dataclass(frozen=True)
class SphereTangent:
    """Tangent vector at a sphere point: Re integral(X conj(f)) = 0."""

    X: PeriodicFunction
    base: SpherePoint

    def __post_init__(self):
        pairing = float(
            np.mean((self.X.values * np.conj(self.base.values)).real)
        )
        if abs(pairing) > TANGENT_TOL:
            raise NotTangentError(
                f"tangency defect {pairing!r} exceeds {TANGENT_TOL}"
            )

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.X.values, dtype=np.complex128)

    def norm(self) -> float:
        return float(np.sqrt(np.mean(np.abs(self.X.values) ** 2)))


def project_to_tangent(base: SpherePoint, X: PeriodicFunction) -> SphereTangent:
    """Orthogonal projection of X onto the tangent space at ``base``."""
    pairing = np.mean((X.values * np.conj(base.values)).real)
    vals = X.values - pairing * base.values
    return SphereTangent(PeriodicFunction(base.grid, vals), base)


def _require_base_one(X: SphereTangent) -> None:
    dev = float(np.max(np.abs(X.base.values - 1.0)))
    if dev > 1e-9:
        raise ValueError("tangent must be based at the constant function 1")


def exp_at_one(X: SphereTangent) -> SpherePoint:
    """Riemannian exponential at the constant function 1.

    exp_1(X) = cos(r) + sin(r) X/r with r = ||X||; the geodesic segment
    traversed has length exactly r.
    """
    _require_base_one(X)
    r = X.norm()
    if r < 1e-14:
        raise ZeroTangentError("exponential of a zero tangent vector")
    unit = X.values / r
    vals = np.cos(r) + np.sin(r) * unit
    return SpherePoint(PeriodicFunction(X.base.grid, vals))


def log_at_one(f: SpherePoint) -> tuple[float, SphereTangent]:
    """Principal preimage of f under exp_1: radius in (0, pi) and unit vector.

    The full preimage is {(r0 + 2 pi n) X0}; at f = 1 or f = -1 every unit
    tangent works and :class:`AntipodalOrIdentityError` is raised.
    """
    grid = f.grid
    one = np.ones(grid.n)
    d_plus = float(np.sqrt(np.mean(np.abs(f.values - one) ** 2)))
    d_minus = float(np.sqrt(np.mean(np.abs(f.values + one) ** 2)))
    if min(d_plus, d_minus) < POLE_TOL:
        raise AntipodalOrIdentityError(
            "log at +-1 has infinitely many preimages"
        )
    mu = f.height()
    r0 = float(np.arccos(np.clip(mu, -1.0, 1.0)))
    denom = np.sqrt(1.0 - mu * mu)
    X0_vals = (f.values - mu) / denom
    X0 = SphereTangent(
        PeriodicFunction(grid, X0_vals), SpherePoint.constant_one(grid)
    )
    return r0, X0


def great_circle_point(f: SpherePoint, r: float) -> np.ndarray:
    """Point at arc length r on the great circle through 1 and f.

    Uses exp_1(r X0) = (sin(r0 - r) + f sin(r)) / sin(r0); raises where the
    circle is not unique (f = +-1).
    """
    r0, _ = log_at_one(f)
    return (np.sin(r0 - r) + f.values * np.sin(r)) / np.sin(r0)


def stereo_south(f: SpherePoint) -> PeriodicFunction:
    """Stereographic chart from the pole -1 onto the hyperplane 1-perp."""
    mu = f.height()
    if float(np.sqrt(np.mean(np.abs(f.values + 1.0) ** 2))) < POLE_TOL:
        raise AtPoleError("stereo_south undefined at -1")
    return PeriodicFunction(f.grid, (f.values - mu) / (1.0 + mu))


def stereo_south_inverse(h: PeriodicFunction) -> SpherePoint:
    nsq = float(np.mean(np.abs(h.values) ** 2))
    vals = (2.0 * h.values - nsq + 1.0) / (nsq + 1.0)
    return SpherePoint(PeriodicFunction(h.grid, vals))


def stereo_north(f: SpherePoint) -> PeriodicFunction:
    """Stereographic chart from the pole +1."""
    mu = f.height()
    if float(np.sqrt(np.mean(np.abs(f.values - 1.0) ** 2))) < POLE_TOL:
        raise AtPoleError("stereo_north undefined at 1")
    return PeriodicFunction(f.grid, (f.values - mu) / (1.0 - mu))


def stereo_north_inverse(h: PeriodicFunction) -> SpherePoint:
    nsq = float(np.mean(np.abs(h.values) ** 2))
    vals = (2.0 * h.values + nsq - 1.0) / (nsq + 1.0)
    return SpherePoint(PeriodicFunction(h.grid, vals))


def is_nowhere_vanishing(f: SpherePoint, tol: float = MODULUS_TOL) -> bool:
    """True when min |f| exceeds the modulus tolerance."""
    return f.min_modulus() > tol


def segment_in_U(
    f: SpherePoint,
    g: SpherePoint,
    which: str = "short",
    im_tol: float = IM_RATIO_TOL,
) -> bool:
    """Whether the short or long geodesic segment from f to g avoids zeros.

    Short segment: contained in U iff f/g never lands on the negative real
    axis.  Long segment: contained iff f/g is never real.  'Real' is tested
    with an imaginary-part tolerance relative to |f/g|, so near-threshold
    answers are grid dependent.
    """
    if which not in ("short", "long"):
        raise ValueError(f"which must be 'short' or 'long', got {which!r}")
    d_minus = f.l2_distance(g)
    d_plus = float(np.sqrt(np.mean(np.abs(f.values + g.values) ** 2)))
    if min(d_minus, d_plus) < POLE_TOL:
        raise ProportionalPointsError("segment query needs f != +-g")
    ratio = f.values / g.values
    realish = np.abs(ratio.imag) <= im_tol * np.abs(ratio)
    if which == "short":
        return not bool(np.any(realish & (ratio.real < 0.0)))
    return not bool(np.any(realish))
