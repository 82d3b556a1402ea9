"""The semidirect product of circle diffeomorphisms with angle fields.

Elements are pairs (phi, alpha): an orientation-preserving diffeomorphism
of the circle fixing 0, and an angle field valued in the circle of length
4 pi.  Multiplication is (phi, alpha)(psi, beta) = (phi o psi, beta +
alpha o psi).  The right-invariant metric at the identity is

    <(u, rho), (v, tau)> = (1/4) integral(u_x v_x + rho tau).

The map Phi(phi, alpha) = sqrt(phi_x) exp(i alpha / 2) identifies the
group isometrically with the nowhere-vanishing part of the unit sphere in
L2(S^1; C).

Angle fields are carried as continuous real lifts together with an
integer winding number w, meaning alpha(x + 1) = alpha(x) + 4 pi w; the
mod-4pi reduction is applied only when comparing elements.
"""

from __future__ import annotations

import numpy as np

from . import funcspace as fs
from .errors import UnwrapAmbiguityError, VanishingModulusError
from .funcspace import PeriodicFunction, PeriodicGrid
from .sphere import SpherePoint

FOUR_PI = 4.0 * np.pi
MODULUS_TOL = 1e-8
PHASE_JUMP_TOL = 0.5 * np.pi


def wrap_mod_4pi(delta):
    """Reduce an angle difference to the symmetric interval [-2pi, 2pi)."""
    return np.mod(np.asarray(delta) + 2.0 * np.pi, FOUR_PI) - 2.0 * np.pi


class TangentVector:
    """Tangent vector (u1, u2): u1 vanishes at 0, both real."""

    __slots__ = ("u1", "u2")

    def __init__(self, u1: PeriodicFunction, u2: PeriodicFunction):
        if u1.is_complex or u2.is_complex:
            raise ValueError("tangent components must be real")
        if u1.grid != u2.grid:
            raise ValueError("components live on different grids")
        if abs(u1.values[0]) > 1e-10:
            raise ValueError(f"u1 must vanish at 0, got {u1.values[0]!r}")
        self.u1 = u1
        self.u2 = u2

    @property
    def grid(self) -> PeriodicGrid:
        return self.u1.grid

    @classmethod
    def zero(cls, grid: PeriodicGrid) -> "TangentVector":
        z = PeriodicFunction.zeros(grid)
        return cls(z, z)

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.u1 + other.u1, self.u2 + other.u2)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.u1 - other.u1, self.u2 - other.u2)

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(self.u1 * scalar, self.u2 * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TangentVector(n={self.grid.n})"


class GroupElement:
    """Pair (phi, alpha) with phi an increasing lift fixing 0.

    ``phi`` holds the lift samples phi(x_j) (so phi(x+1) = phi(x) + 1 by
    convention) and ``alpha`` holds continuous lift samples of the angle
    field, whose winding number w gives alpha(x+1) = alpha(x) + 4 pi w.
    """

    __slots__ = ("grid", "phi", "alpha", "winding")

    def __init__(
        self,
        phi: PeriodicFunction,
        alpha: PeriodicFunction,
        winding: int = 0,
    ):
        if phi.is_complex or alpha.is_complex:
            raise ValueError("phi and alpha must be real")
        if phi.grid != alpha.grid:
            raise ValueError("phi and alpha live on different grids")
        if abs(phi.values[0]) > 1e-9:
            raise ValueError(f"phi must fix 0, got phi(0)={phi.values[0]!r}")
        fs._check_increasing(phi, tol=0.0)
        self.grid = phi.grid
        self.phi = phi
        self.alpha = alpha
        self.winding = int(winding)

    @classmethod
    def identity(cls, grid: PeriodicGrid) -> "GroupElement":
        return cls(
            PeriodicFunction(grid, grid.x),
            PeriodicFunction.zeros(grid),
            0,
        )

    @property
    def phi_x(self) -> PeriodicFunction:
        """Spectral derivative of phi via its periodic part."""
        h = PeriodicFunction(self.grid, self.phi.values - self.grid.x)
        return fs.derivative(h) + 1.0

    def distance(self, other: "GroupElement") -> float:
        """Sup distance with the angle compared mod 4 pi."""
        dphi = float(np.max(np.abs(self.phi.values - other.phi.values)))
        dalpha = float(
            np.max(np.abs(wrap_mod_4pi(self.alpha.values - other.alpha.values)))
        )
        return max(dphi, dalpha)

    def allclose(self, other: "GroupElement", tol: float = 1e-9) -> bool:
        return self.distance(other) < tol

    def __repr__(self):
        return f"GroupElement(n={self.grid.n}, winding={self.winding})"

    def to_json_obj(self) -> dict:
        return {
            "n": self.grid.n,
            "phi": self.phi.values.tolist(),
            "alpha": self.alpha.values.tolist(),
            "winding": self.winding,
        }

    @classmethod
    def from_json_obj(cls, obj) -> "GroupElement":
        grid = PeriodicGrid(int(obj["n"]))
        return cls(
            PeriodicFunction(grid, np.asarray(obj["phi"], dtype=float)),
            PeriodicFunction(grid, np.asarray(obj["alpha"], dtype=float)),
            int(obj["winding"]),
        )


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """(phi, alpha)(psi, beta) = (phi o psi, beta + alpha o psi)."""
    phi = fs.compose_lift(a.phi, b.phi, 1.0)
    alpha_comp = fs.compose_lift(a.alpha, b.phi, FOUR_PI * a.winding)
    alpha = b.alpha + alpha_comp
    return GroupElement(phi, alpha, a.winding + b.winding)


def inverse(a: GroupElement) -> GroupElement:
    """(phi, alpha)^{-1} = (phi^{-1}, -alpha o phi^{-1})."""
    phi_inv = fs.invert_diffeo(a.phi)
    alpha = -fs.compose_lift(a.alpha, phi_inv, FOUR_PI * a.winding)
    return GroupElement(phi_inv, alpha, -a.winding)


def metric(at: GroupElement, U: TangentVector, V: TangentVector) -> float:
    """Right-invariant metric (1/4) integral(U1x V1x / phi_x + U2 V2 phi_x)."""
    phix = at.phi_x.values
    u1x = fs.derivative(U.u1).values
    v1x = fs.derivative(V.u1).values
    integrand = u1x * v1x / phix + U.u2.values * V.u2.values * phix
    return 0.25 * float(np.mean(integrand))


def phi_map(a: GroupElement) -> SpherePoint:
    """The isometry Phi(phi, alpha) = sqrt(phi_x) exp(i alpha / 2)."""
    phix = a.phi_x.values
    vals = np.sqrt(phix) * np.exp(0.5j * a.alpha.values)
    return SpherePoint(PeriodicFunction(a.grid, vals))


def phi_inverse(
    f: SpherePoint,
    modulus_tol: float = MODULUS_TOL,
    jump_tol: float = PHASE_JUMP_TOL,
) -> GroupElement:
    """Invert Phi: phi(x) = integral_0^x |f|^2, alpha = 2 arg f unwrapped.

    The phase is unwrapped sequentially along the grid starting from
    alpha(0) in [0, 4 pi); a jump above ``jump_tol`` between adjacent nodes
    means the grid cannot resolve the phase and is rejected.
    """
    vals = f.values
    if float(np.min(np.abs(vals))) <= modulus_tol:
        raise VanishingModulusError(
            f"phi_inverse needs |f| > {modulus_tol}, min={np.min(np.abs(vals))!r}"
        )
    ratios = np.roll(vals, -1) / vals
    jumps = np.angle(ratios)
    if float(np.max(np.abs(jumps))) > jump_tol:
        raise UnwrapAmbiguityError(
            "adjacent-node phase jump exceeds pi/2; refine the grid"
        )
    theta0 = float(np.mod(np.angle(vals[0]), 2.0 * np.pi))
    theta = theta0 + np.concatenate(([0.0], np.cumsum(jumps[:-1])))
    winding = int(np.rint(np.sum(jumps) / (2.0 * np.pi)))
    grid = f.grid
    modsq = PeriodicFunction(grid, np.abs(vals) ** 2)
    phi = fs.antiderivative_from_zero(modsq)
    alpha = PeriodicFunction(grid, 2.0 * theta)
    return GroupElement(phi, alpha, winding)


def tangent_phi(at: GroupElement, U: TangentVector) -> PeriodicFunction:
    """Differential of Phi: (U1x + i U2 phi_x) exp(i alpha/2) / (2 sqrt(phi_x))."""
    phix = at.phi_x.values
    u1x = fs.derivative(U.u1).values
    vals = (
        (u1x + 1j * U.u2.values * phix)
        * np.exp(0.5j * at.alpha.values)
        / (2.0 * np.sqrt(phix))
    )
    return PeriodicFunction(at.grid, vals)
