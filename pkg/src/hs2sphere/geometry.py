"""Connection, Kahler structure, and curvature on the quotient space.

All identity verifications are carried out at the group identity with
right-invariant extensions, which is where every formula is simplest:
for right-invariant fields X, Y with values u, v at the identity,

    (nabla_X Y)|_id = (v_1x u_1, v_2x u_1) - Gamma(v, u),

and scalar invariants like <Y, Z> are constant along the group, so their
derivatives vanish.

Two metrics appear: the full one, (1/4) integral(u1x v1x + u2 v2), and
the mean-free one where second components enter through their zero-mean
projections.  Tangent classes on the quotient are represented by their
zero-mean member, which every formula below produces automatically.
"""

from __future__ import annotations

import numpy as np

from . import funcspace as fs
from .errors import DegeneratePlaneError
from .funcspace import PeriodicFunction, PeriodicGrid
from .group import GroupElement, TangentVector


class KTangent:
    """Tangent class (u1, [u2]) stored by its zero-mean representative."""

    __slots__ = ("u1", "u2")

    def __init__(self, u1: PeriodicFunction, u2: PeriodicFunction):
        if u1.is_complex or u2.is_complex:
            raise ValueError("components must be real")
        if u1.grid != u2.grid:
            raise ValueError("components live on different grids")
        if abs(u1.values[0]) > 1e-10:
            raise ValueError(f"u1 must vanish at 0, got {u1.values[0]!r}")
        self.u1 = u1
        self.u2 = fs.mean_projection(u2)

    @property
    def grid(self) -> PeriodicGrid:
        return self.u1.grid

    def __add__(self, other: "KTangent") -> "KTangent":
        return KTangent(self.u1 + other.u1, self.u2 + other.u2)

    def __sub__(self, other: "KTangent") -> "KTangent":
        return KTangent(self.u1 - other.u1, self.u2 - other.u2)

    def __mul__(self, scalar: float) -> "KTangent":
        return KTangent(self.u1 * scalar, self.u2 * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "KTangent":
        return KTangent(-self.u1, -self.u2)

    def __repr__(self):
        return f"KTangent(n={self.grid.n})"


def _u1x(t) -> np.ndarray:
    return fs.derivative(t.u1).values


def _pi(vals: np.ndarray) -> np.ndarray:
    return vals - np.mean(vals)


def _inv_a_dx(grid: PeriodicGrid, vals: np.ndarray) -> PeriodicFunction:
    """A^{-1} d/dx of arbitrary samples (the derivative kills the mean)."""
    return fs.inverse_A(fs.derivative(PeriodicFunction(grid, vals)))


# ---------------------------------------------------------------------------
# metrics and the symplectic form
# ---------------------------------------------------------------------------


def metric_G(u: TangentVector, v: TangentVector) -> float:
    """Full metric at the identity: (1/4) integral(u1x v1x + u2 v2)."""
    return 0.25 * float(
        np.mean(_u1x(u) * _u1x(v) + u.u2.values * v.u2.values)
    )


def metric_K(u, v) -> float:
    """Quotient metric: second components enter mean-free."""
    return 0.25 * float(
        np.mean(_u1x(u) * _u1x(v) + _pi(u.u2.values) * _pi(v.u2.values))
    )


def norm_K(u) -> float:
    return float(np.sqrt(max(metric_K(u, u), 0.0)))


def metric_K_at(at: GroupElement, U, V) -> float:
    """Quotient metric at a base point: projections use the phi_x weight,

    (1/4) integral(U1x V1x / phi_x + pi(U2) pi(V2) phi_x),
    pi(W) = W - integral(W phi_x).
    """
    phix = at.phi_x.values
    u1x, v1x = _u1x(U), _u1x(V)
    pu = U.u2.values - np.mean(U.u2.values * phix)
    pv = V.u2.values - np.mean(V.u2.values * phix)
    return 0.25 * float(np.mean(u1x * v1x / phix + pu * pv * phix))


def symplectic_omega(u, v) -> float:
    """Two-form (1/4) integral(u2x v1 - v2x u1); constant coefficients."""
    u2x = fs.derivative(u.u2).values
    v2x = fs.derivative(v.u2).values
    return 0.25 * float(np.mean(u2x * v.u1.values - v2x * u.u1.values))


# ---------------------------------------------------------------------------
# Christoffel maps
# ---------------------------------------------------------------------------


def christoffel_G(u: TangentVector, v: TangentVector) -> TangentVector:
    """Gamma(u, v) = -(1/2)(A^{-1} d/dx(u1x v1x + u2 v2), u1x v2 + v1x u2)."""
    grid = u.grid
    u1x, v1x = _u1x(u), _u1x(v)
    first = _inv_a_dx(grid, u1x * v1x + u.u2.values * v.u2.values) * (-0.5)
    second = PeriodicFunction(
        grid, -0.5 * (u1x * v.u2.values + v1x * u.u2.values)
    )
    return TangentVector(first, second)


def christoffel_K(u: KTangent, v: KTangent) -> KTangent:
    """Mean-free Christoffel map; the class output is re-projected."""
    grid = u.grid
    u1x, v1x = _u1x(u), _u1x(v)
    pu2, pv2 = _pi(u.u2.values), _pi(v.u2.values)
    first = _inv_a_dx(grid, u1x * v1x + pu2 * pv2) * (-0.5)
    second = PeriodicFunction(grid, -0.5 * (u1x * pv2 + v1x * pu2))
    return KTangent(first, second)


# ---------------------------------------------------------------------------
# complex structure
# ---------------------------------------------------------------------------


def kahler_J(U, at: GroupElement | None = None):
    """Almost complex structure J(U1, [U2]) = (-int_0^x pi(U2) phi_x, [U1x / phi_x]).

    With ``at`` omitted the base is the identity and the result is a
    canonical :class:`KTangent`.  At a general base the projection uses the
    phi_x-weighted mean and the result is returned as a raw representative
    (:class:`TangentVector`); its second slot is only defined up to a
    constant.
    """
    if at is None:
        first = -1.0 * fs.antiderivative_from_zero(
            PeriodicFunction(U.u1.grid, _pi(U.u2.values))
        )
        return KTangent(first, fs.derivative(U.u1))
    phix = at.phi_x.values
    weighted_mean = float(np.mean(U.u2.values * phix))
    pi_u2 = U.u2.values - weighted_mean
    first = -1.0 * fs.antiderivative_from_zero(
        PeriodicFunction(at.grid, pi_u2 * phix)
    )
    second = PeriodicFunction(at.grid, _u1x(U) / phix)
    return TangentVector(first, second)


def dJ_direction(u: KTangent, v: KTangent) -> KTangent:
    """Chart derivative of J at the identity along u, applied to v.

    (DJ . u)(v) = (A^{-1} d/dx(pi(v2) u1x), -[v1x u1x]).
    """
    grid = u.grid
    first = _inv_a_dx(grid, _pi(v.u2.values) * _u1x(u))
    second = PeriodicFunction(grid, -_u1x(v) * _u1x(u))
    return KTangent(first, second)


def nabla_J_residual(u: KTangent, v: KTangent) -> float:
    """Norm of (DJ.u)(v) - Gamma(Jv, u) + J Gamma(v, u); zero when J is parallel."""
    total = dJ_direction(u, v) - christoffel_K(kahler_J(v), u) + kahler_J(
        christoffel_K(v, u)
    )
    return norm_K(total)


# ---------------------------------------------------------------------------
# bracket and Nijenhuis tensor
# ---------------------------------------------------------------------------


def bracket_K(u: KTangent, v: KTangent) -> KTangent:
    """Bracket of right-invariant fields: (v1x u1 - u1x v1, [v2x u1 - u2x v1])."""
    u1x, v1x = _u1x(u), _u1x(v)
    u2x = fs.derivative(u.u2).values
    v2x = fs.derivative(v.u2).values
    grid = u.grid
    first = PeriodicFunction(grid, v1x * u.u1.values - u1x * v.u1.values)
    second = PeriodicFunction(grid, v2x * u.u1.values - u2x * v.u1.values)
    return KTangent(first, second)


def bracket_G(u: TangentVector, v: TangentVector) -> TangentVector:
    """Same bracket without the class projection."""
    u1x, v1x = _u1x(u), _u1x(v)
    u2x = fs.derivative(u.u2).values
    v2x = fs.derivative(v.u2).values
    grid = u.grid
    first = PeriodicFunction(grid, v1x * u.u1.values - u1x * v.u1.values)
    second = PeriodicFunction(grid, v2x * u.u1.values - u2x * v.u1.values)
    return TangentVector(first, second)


def nijenhuis_terms(
    u: KTangent, v: KTangent
) -> tuple[KTangent, KTangent, KTangent, KTangent]:
    """The four summands [u,v], J[Ju,v], J[u,Jv], -[Ju,Jv]."""
    Ju, Jv = kahler_J(u), kahler_J(v)
    return (
        bracket_K(u, v),
        kahler_J(bracket_K(Ju, v)),
        kahler_J(bracket_K(u, Jv)),
        -bracket_K(Ju, Jv),
    )


def nijenhuis(u: KTangent, v: KTangent) -> KTangent:
    """Nijenhuis tensor of J; vanishes identically (J is integrable)."""
    t1, t2, t3, t4 = nijenhuis_terms(u, v)
    return t1 + t2 + t3 + t4


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def curvature_G(u: TangentVector, v: TangentVector) -> float:
    """<R(u,v)v, u> on the full group: the constant-curvature-1 contraction."""
    return metric_G(u, u) * metric_G(v, v) - metric_G(u, v) ** 2


def curvature_K_closed(u: KTangent, v: KTangent) -> float:
    """<R(u,v)v, u> = |u|^2 |v|^2 - <u,v>^2 + 3 omega(u,v)^2."""
    return (
        metric_K(u, u) * metric_K(v, v)
        - metric_K(u, v) ** 2
        + 3.0 * symplectic_omega(u, v) ** 2
    )


def _mul_pair(make, w, a: np.ndarray):
    """(w1x a, w2x a): ingredient of the local curvature expression."""
    grid = w.u1.grid
    w2x = fs.derivative(w.u2).values
    return make(
        PeriodicFunction(grid, _u1x(w) * a),
        PeriodicFunction(grid, w2x * a),
    )


def _curvature_local(u, v, gamma, met, make) -> float:
    """Five-term Christoffel expression for <R(u,v)v, u>.

    Valid at the identity for right-invariant extensions; ``gamma`` and
    ``met`` select which of the two geometries is meant.
    """
    guv = gamma(u, v)
    guu = gamma(u, u)
    gvv = gamma(v, v)
    term1 = met(guv, guv) - met(guu, gvv)
    d_u_v1 = _mul_pair(make, u, v.u1.values)
    d_u_u1 = _mul_pair(make, u, u.u1.values)
    term2 = -met(d_u_v1, guv) + met(d_u_u1, gvv)
    d_v_v1 = _mul_pair(make, v, v.u1.values)
    d_v_u1 = _mul_pair(make, v, u.u1.values)
    combo = (
        -1.0 * gamma(d_v_v1, u)
        - 1.0 * gamma(v, d_u_v1)
        + 2.0 * gamma(d_v_u1, v)
    )
    term3 = met(combo, u)
    return term1 + term2 + term3


def curvature_K_local(u: KTangent, v: KTangent) -> float:
    """Curvature through the Christoffel map only; cross-checks the closed form."""
    return _curvature_local(u, v, christoffel_K, metric_K, KTangent)


def curvature_G_local(u: TangentVector, v: TangentVector) -> float:
    """Same local expression on the full group; the value is the Gram determinant."""
    return _curvature_local(u, v, christoffel_G, metric_G, TangentVector)


def sectional_curvature(u: KTangent, v: KTangent) -> float:
    """sec(u, v) in [1, 4]; equals 4 exactly on J-invariant planes."""
    gram = metric_K(u, u) * metric_K(v, v) - metric_K(u, v) ** 2
    if gram < 1e-12:
        raise DegeneratePlaneError("u, v do not span a plane")
    return curvature_K_closed(u, v) / gram


# ---------------------------------------------------------------------------
# right-invariant covariant derivative and compatibility residuals
# ---------------------------------------------------------------------------


def nabla_rightinvariant_K(v: KTangent, u: KTangent) -> KTangent:
    """nabla_X Y at the identity for right-invariant X, Y with values u, v."""
    return _mul_pair(KTangent, v, u.u1.values) - christoffel_K(v, u)


def nabla_rightinvariant_G(v: TangentVector, u: TangentVector) -> TangentVector:
    return _mul_pair(TangentVector, v, u.u1.values) - christoffel_G(v, u)


def metric_compat_residual_K(u: KTangent, v: KTangent, w: KTangent) -> float:
    """|<nabla_X Y, Z> + <Y, nabla_X Z>| for right-invariant fields (X<Y,Z> = 0)."""
    return abs(
        metric_K(nabla_rightinvariant_K(v, u), w)
        + metric_K(v, nabla_rightinvariant_K(w, u))
    )


def metric_compat_residual_G(
    u: TangentVector, v: TangentVector, w: TangentVector
) -> float:
    return abs(
        metric_G(nabla_rightinvariant_G(v, u), w)
        + metric_G(v, nabla_rightinvariant_G(w, u))
    )


def omega_compat_residual(u: KTangent, v: KTangent, w: KTangent) -> float:
    """|omega(nabla_X Y, Z) + omega(Y, nabla_X Z)|; zero when omega is parallel."""
    return abs(
        symplectic_omega(nabla_rightinvariant_K(v, u), w)
        + symplectic_omega(v, nabla_rightinvariant_K(w, u))
    )


def jacobi_residual(u: KTangent, v: KTangent, w: KTangent) -> float:
    """Metric norm of the cyclic bracket sum; zero for a Lie bracket.

    The cyclic sum cancels only through the Jacobi identity, which is a
    formal consequence of the product rule.  Evaluating it that way keeps
    the cancellation exact in floating point: each input derivative is
    computed once, every derived quantity (including the first-component
    derivative the metric norm needs) is assembled by the product rule
    from those shared values, and no spectral derivative is taken of a
    nearly-cancelled intermediate, which would amplify its roundoff by
    the top wavenumber.
    """

    def describe(t):
        u1x = fs.derivative(t.u1)
        u1xx = fs.derivative(u1x)
        u2x = fs.derivative(t.u2)
        return {
            "u1": t.u1.values,
            "u1x": u1x.values,
            "u1xx": u1xx.values,
            "u1xxx": fs.derivative(u1xx).values,
            "u2x": u2x.values,
            "u2xx": fs.derivative(u2x).values,
        }

    def inner(a, b):
        return {
            "first": b["u1x"] * a["u1"] - a["u1x"] * b["u1"],
            "firstx": b["u1xx"] * a["u1"] - a["u1xx"] * b["u1"],
            "firstxx": (
                b["u1xxx"] * a["u1"] + b["u1xx"] * a["u1x"]
                - a["u1xxx"] * b["u1"] - a["u1xx"] * b["u1x"]
            ),
            "second": b["u2x"] * a["u1"] - a["u2x"] * b["u1"],
            "secondx": (
                b["u2xx"] * a["u1"] + b["u2x"] * a["u1x"]
                - a["u2xx"] * b["u1"] - a["u2x"] * b["u1x"]
            ),
        }

    def outer(a, B):
        first_dx = B["firstxx"] * a["u1"] - a["u1xx"] * B["first"]
        second = B["secondx"] * a["u1"] - a["u2x"] * B["first"]
        return first_dx, second

    du, dv, dw = describe(u), describe(v), describe(w)
    pieces = [
        outer(du, inner(dv, dw)),
        outer(dv, inner(dw, du)),
        outer(dw, inner(du, dv)),
    ]
    first_dx = sum(p[0] for p in pieces)
    second = sum(p[1] for p in pieces)
    return float(np.sqrt(0.25 * np.mean(first_dx**2 + _pi(second) ** 2)))
