"""The fibration layer: circle quotients of the group and of the sphere.

A constant phase added to the angle component acts on the group; the
quotient is the base space of tangent classes.  A constant unit complex
factor acts on the sphere; the quotient is projective space.  Both
projections are Riemannian submersions, the square with the two
isometries commutes, and the O'Neill formula accounts for the curvature
gap between total space (constant 1) and base (pinched in [1, 4]) through
the vertical part of horizontal brackets.

Canonical representatives: classes of angle fields are pinned by
alpha(0) = 0; projective classes by f(0) real and positive (valid on the
nowhere-vanishing set).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import funcspace as fs
from .errors import (
    BaseMismatchError,
    ZeroAtBasePointError,
    ZeroAtChartPointError,
)
from .funcspace import PeriodicFunction, PeriodicGrid
from .geometry import (
    KTangent,
    bracket_G,
    curvature_G,
    curvature_G_local,
    curvature_K_closed,
)
from .group import GroupElement, TangentVector
from .sphere import SpherePoint, SphereTangent


@dataclass(frozen=True)
class KPoint:
    """Group element modulo constant phase: canonical lift has alpha(0) = 0."""

    phi: PeriodicFunction
    alpha: PeriodicFunction
    winding: int = 0

    def __post_init__(self):
        if abs(self.alpha.values[0]) > 1e-12:
            raise ValueError("canonical representative needs alpha(0) = 0")

    @property
    def grid(self) -> PeriodicGrid:
        return self.phi.grid

    def to_group_element(self) -> GroupElement:
        return GroupElement(self.phi, self.alpha, self.winding)

    def distance(self, other: "KPoint") -> float:
        dphi = float(np.max(np.abs(self.phi.values - other.phi.values)))
        dalpha = float(np.max(np.abs(self.alpha.values - other.alpha.values)))
        return max(dphi, dalpha)


@dataclass(frozen=True)
class CPPoint:
    """Projective class, represented with f(0) real and positive."""

    representative: SpherePoint

    def __post_init__(self):
        z = self.representative.values[0]
        if abs(z.imag) > 1e-10 or z.real <= 0.0:
            raise ValueError("canonical representative needs f(0) real > 0")

    @property
    def grid(self) -> PeriodicGrid:
        return self.representative.grid

    @property
    def values(self) -> np.ndarray:
        return self.representative.values

    def distance(self, other: "CPPoint") -> float:
        return self.representative.l2_distance(other.representative)


def project_p(a: GroupElement) -> KPoint:
    """Quotient by constant phase shifts: pin the lift at alpha(0) = 0."""
    alpha = PeriodicFunction(a.grid, a.alpha.values - a.alpha.values[0])
    return KPoint(a.phi, alpha, a.winding)


def project_q(f: SpherePoint, base_tol: float = 1e-10) -> CPPoint:
    """Projective canonicalization by the phase gauge at x = 0."""
    z = f.values[0]
    if abs(z) < base_tol:
        raise ZeroAtBasePointError("representative vanishes at the base point")
    gauge = np.conj(z) / abs(z)
    return CPPoint(SpherePoint(PeriodicFunction(f.grid, f.values * gauge)))


def psi_map(kp: KPoint) -> CPPoint:
    """Quotient isometry: class of sqrt(phi_x) exp(i alpha / 2)."""
    elem = kp.to_group_element()
    phix = elem.phi_x.values
    vals = np.sqrt(phix) * np.exp(0.5j * kp.alpha.values)
    return project_q(SpherePoint(PeriodicFunction(kp.grid, vals)))


def check_diagram(a: GroupElement) -> float:
    """L2 distance between the two routes group -> projective classes."""
    from .group import phi_map  # deferred: group imports sphere, not hopf

    route_sphere = project_q(phi_map(a))
    route_base = psi_map(project_p(a))
    return route_sphere.distance(route_base)


# ---------------------------------------------------------------------------
# horizontal / vertical splittings
# ---------------------------------------------------------------------------


def vertical_sphere(X: SphereTangent) -> SphereTangent:
    """Component along the fiber direction i g."""
    g = X.base.values
    coeff = float(np.mean((g * np.conj(X.values)).imag))
    vals = -1j * g * coeff
    return SphereTangent(PeriodicFunction(X.base.grid, vals), X.base)


def horizontal_sphere(X: SphereTangent) -> SphereTangent:
    """Orthogonal projection onto the horizontal space: X + i g Im integral(g conj(X))."""
    g = X.base.values
    coeff = float(np.mean((g * np.conj(X.values)).imag))
    vals = X.values + 1j * g * coeff
    return SphereTangent(PeriodicFunction(X.base.grid, vals), X.base)


def vertical_G(U: TangentVector, at: GroupElement) -> TangentVector:
    """Fiber component (0, integral(U2 phi_x)): a constant second slot."""
    phix = at.phi_x.values
    c = float(np.mean(U.u2.values * phix))
    return TangentVector(
        PeriodicFunction.zeros(at.grid),
        PeriodicFunction.constant(at.grid, c),
    )


def horizontal_G(U: TangentVector, at: GroupElement) -> TangentVector:
    """Horizontal part (U1, U2 - integral(U2 phi_x))."""
    phix = at.phi_x.values
    c = float(np.mean(U.u2.values * phix))
    return TangentVector(U.u1, U.u2 - c)


def fubini_study(X: SphereTangent, Y: SphereTangent) -> float:
    """Quotient metric of the pushforwards: pairing of horizontal parts."""
    if X.base.l2_distance(Y.base) > 1e-10:
        raise BaseMismatchError("tangents are based at different points")
    Xh = horizontal_sphere(X)
    Yh = horizontal_sphere(Y)
    return float(np.mean((Xh.values * np.conj(Yh.values)).real))


# ---------------------------------------------------------------------------
# O'Neill identity
# ---------------------------------------------------------------------------


def vertical_bracket_integral(u: KTangent, v: KTangent) -> float:
    """integral(v2x u1 - u2x v1): the fiber component of the horizontal bracket."""
    u2x = fs.derivative(u.u2).values
    v2x = fs.derivative(v.u2).values
    return float(np.mean(v2x * u.u1.values - u2x * v.u1.values))


def oneill_check(
    u: KTangent, v: KTangent, g_route: str = "closed"
) -> tuple[float, float, float]:
    """Base curvature vs total-space curvature of horizontal lifts.

    lhs = <R(u,v)v, u> on the base (closed form); rhs adds (3/4) of the
    squared norm of the vertical bracket component to the total-space
    curvature of the lifts.  ``g_route`` picks the closed Gram form or the
    five-term Christoffel expression for the total-space term.  Returns
    (lhs, rhs, relative residual).
    """
    uh = TangentVector(u.u1, u.u2)
    vh = TangentVector(v.u1, v.u2)
    if g_route == "closed":
        g_term = curvature_G(uh, vh)
    elif g_route == "local":
        g_term = curvature_G_local(uh, vh)
    else:
        raise ValueError(f"unknown g_route {g_route!r}")
    m = vertical_bracket_integral(u, v)
    # squared metric norm of the constant-(0, m) vector is m^2 / 4
    rhs = g_term + 0.75 * (m * m / 4.0)
    lhs = curvature_K_closed(u, v)
    residual = abs(lhs - rhs) / max(1.0, abs(lhs))
    return lhs, rhs, residual


def vertical_bracket_G(
    u: TangentVector, v: TangentVector, at: GroupElement
) -> TangentVector:
    """Vertical part of the bracket of horizontal lifts at a base point."""
    return vertical_G(bracket_G(u, v), at)


# ---------------------------------------------------------------------------
# projective charts
# ---------------------------------------------------------------------------


def _node_index(grid: PeriodicGrid, x0: float) -> int:
    j = int(round((x0 % 1.0) * grid.n))
    if abs((x0 % 1.0) * grid.n - j) > 1e-9:
        raise ValueError(f"chart point {x0!r} is not a grid node")
    return j % grid.n


def cp_chart(x0: float, f: CPPoint, tol: float = 1e-10) -> PeriodicFunction:
    """Chart at the node x0: the class of f becomes f(. + x0)/f(x0).

    The shift is an exact sample roll; the result takes the value 1 at
    argument 0.
    """
    j = _node_index(f.grid, x0)
    vals = f.values
    pivot = vals[j]
    if abs(pivot) <= tol:
        raise ZeroAtChartPointError(f"|f({x0})| = {abs(pivot)!r} too small")
    return PeriodicFunction(f.grid, np.roll(vals, -j) / pivot)


def cp_chart_inverse(x0: float, h: PeriodicFunction) -> CPPoint:
    """Reassemble the projective class from its chart value."""
    j = _node_index(h.grid, x0)
    vals = np.roll(h.values, j)
    norm = float(np.sqrt(np.mean(np.abs(vals) ** 2)))
    return project_q(SpherePoint(PeriodicFunction(h.grid, vals / norm)))
