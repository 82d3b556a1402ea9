"""Spectral calculus for functions on the circle of length one.

Functions are represented by their samples on the uniform grid
x_j = j/n, j = 0..n-1, with n even.  Differentiation, integration, and
antidifferentiation are done in Fourier space, so band-limited inputs are
handled to near machine precision.

Circle diffeomorphisms and angle fields are not periodic themselves; they
are handled as *lifts*: an increasing diffeomorphism fixing 0 satisfies
phi(x + 1) = phi(x) + 1, so its periodic part h(x) = phi(x) - x can be
interpolated trigonometrically while the identity part is carried exactly.
A :class:`PeriodicFunction` may therefore hold either genuinely periodic
samples or lift samples; operations that expect a lift say so.
"""

from __future__ import annotations

import csv

import numpy as np
from scipy.optimize import brentq

from .errors import NonZeroMeanError, NotMonotoneError
from .serialize import fmt_float, json_dump, json_dumps

DEFAULT_N = 256
MEAN_TOL = 1e-10
ROOT_TOL = 1e-12


class PeriodicGrid:
    """Uniform grid on [0, 1) with an even number of nodes n >= 8."""

    __slots__ = ("n", "x")

    def __init__(self, n: int = DEFAULT_N):
        n = int(n)
        if n < 8 or n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 8, got {n}")
        self.n = n
        x = np.arange(n, dtype=float) / n
        x.flags.writeable = False
        self.x = x

    def __eq__(self, other):
        return isinstance(other, PeriodicGrid) and other.n == self.n

    def __hash__(self):
        return hash(("PeriodicGrid", self.n))

    def __repr__(self):
        return f"PeriodicGrid(n={self.n})"

    @property
    def modes(self) -> np.ndarray:
        """Integer Fourier mode numbers in FFT order."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n)


class PeriodicFunction:
    """Sampled real or complex function on a :class:`PeriodicGrid`.

    Values are immutable after construction.  Arithmetic operators combine
    samples pointwise and require matching grids.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: PeriodicGrid, values):
        values = np.asarray(values)
        if values.shape != (grid.n,):
            raise ValueError(
                f"expected {grid.n} samples, got shape {values.shape}"
            )
        if np.iscomplexobj(values):
            values = values.astype(np.complex128, copy=True)
        else:
            values = values.astype(np.float64, copy=True)
        values.flags.writeable = False
        self.grid = grid
        self.values = values

    # -- constructors -------------------------------------------------

    @classmethod
    def from_callable(cls, grid: PeriodicGrid, fn) -> "PeriodicFunction":
        return cls(grid, fn(grid.x))

    @classmethod
    def constant(cls, grid: PeriodicGrid, value) -> "PeriodicFunction":
        return cls(grid, np.full(grid.n, value))

    @classmethod
    def zeros(cls, grid: PeriodicGrid) -> "PeriodicFunction":
        return cls(grid, np.zeros(grid.n))

    # -- basic queries -------------------------------------------------

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    @property
    def real(self) -> "PeriodicFunction":
        return PeriodicFunction(self.grid, self.values.real)

    @property
    def imag(self) -> "PeriodicFunction":
        return PeriodicFunction(self.grid, np.imag(self.values))

    def conj(self) -> "PeriodicFunction":
        return PeriodicFunction(self.grid, np.conj(self.values))

    def abs(self) -> "PeriodicFunction":
        return PeriodicFunction(self.grid, np.abs(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.mean(np.abs(self.values) ** 2)))

    def __repr__(self):
        kind = "complex" if self.is_complex else "real"
        return f"PeriodicFunction(n={self.grid.n}, {kind})"

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PeriodicFunction):
            if other.grid != self.grid:
                raise ValueError("grids do not match")
            return other.values
        return other

    def __add__(self, other):
        return PeriodicFunction(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PeriodicFunction(self.grid, self.values - self._coerce(other))

    def __rsub__(self, other):
        return PeriodicFunction(self.grid, self._coerce(other) - self.values)

    def __mul__(self, other):
        return PeriodicFunction(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PeriodicFunction(self.grid, self.values / self._coerce(other))

    def __neg__(self):
        return PeriodicFunction(self.grid, -self.values)

    # -- calculus shortcuts ---------------------------------------------

    def derivative(self) -> "PeriodicFunction":
        return derivative(self)

    def integral(self):
        return integrate(self)

    # -- serialization ---------------------------------------------------

    def to_csv(self, path) -> None:
        """Write samples as CSV: columns x,value or x,re,im (17 digits)."""
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if self.is_complex:
                fh.write("x,re,im\n")
                for x, v in zip(self.grid.x, self.values):
                    fh.write(
                        f"{fmt_float(x)},{fmt_float(v.real)},{fmt_float(v.imag)}\n"
                    )
            else:
                fh.write("x,value\n")
                for x, v in zip(self.grid.x, self.values):
                    fh.write(f"{fmt_float(x)},{fmt_float(v)}\n")

    @classmethod
    def from_csv(cls, path) -> "PeriodicFunction":
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        header, rows = rows[0], rows[1:]
        grid = PeriodicGrid(len(rows))
        if header == ["x", "re", "im"]:
            vals = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
        elif header == ["x", "value"]:
            vals = np.array([float(r[1]) for r in rows])
        else:
            raise ValueError(f"unrecognized CSV header {header}")
        return cls(grid, vals)

    def to_json_obj(self) -> dict:
        if self.is_complex:
            return {
                "n": self.grid.n,
                "re": self.values.real.tolist(),
                "im": self.values.imag.tolist(),
            }
        return {"n": self.grid.n, "values": self.values.tolist()}

    def to_json(self, path) -> None:
        json_dump(self.to_json_obj(), path)

    def to_json_str(self) -> str:
        return json_dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "PeriodicFunction":
        grid = PeriodicGrid(int(obj["n"]))
        if "re" in obj:
            vals = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(
                obj["im"], dtype=float
            )
        else:
            vals = np.asarray(obj["values"], dtype=float)
        return cls(grid, vals)


# ---------------------------------------------------------------------------
# spectral calculus
# ---------------------------------------------------------------------------


def derivative(f: PeriodicFunction) -> PeriodicFunction:
    """Spectral derivative.  Linear; annihilates constants exactly.

    The Nyquist mode is dropped, the standard convention that keeps the
    derivative of a real function real.
    """
    n = f.grid.n
    fhat = np.fft.fft(f.values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    mult = 2j * np.pi * k
    mult[n // 2] = 0.0
    out = np.fft.ifft(fhat * mult)
    if not f.is_complex:
        out = out.real
    return PeriodicFunction(f.grid, out)


def integrate(f: PeriodicFunction):
    """Integral over the circle: the sample mean (trapezoid rule)."""
    m = np.mean(f.values)
    return complex(m) if f.is_complex else float(m)


def antiderivative_from_zero(f: PeriodicFunction) -> PeriodicFunction:
    """F(x) = integral of f from 0 to x, F(0) = 0 exactly.

    The zero-mean part is integrated spectrally; the mean contributes the
    linear term mean(f) * x, so the result is a lift unless mean(f) = 0.
    """
    n = f.grid.n
    fhat = np.fft.fft(f.values)
    mean = fhat[0] / n
    k = np.fft.fftfreq(n, d=1.0 / n)
    denom = 2j * np.pi * k
    denom[0] = 1.0
    coeff = fhat / denom
    coeff[0] = 0.0
    p = np.fft.ifft(coeff)
    out = p - p[0] + mean * f.grid.x
    if not f.is_complex:
        out = out.real
    return PeriodicFunction(f.grid, out)


def mean_projection(f: PeriodicFunction) -> PeriodicFunction:
    """Project onto zero-mean functions: f - integral(f).  Idempotent."""
    return PeriodicFunction(f.grid, f.values - np.mean(f.values))


def inverse_A(f: PeriodicFunction, mean_tol: float = MEAN_TOL) -> PeriodicFunction:
    """Invert A = -d^2/dx^2 on zero-mean input; result g has g(0) = 0.

    Raises :class:`NonZeroMeanError` when |mean(f)| exceeds ``mean_tol``.
    """
    mean = np.mean(f.values)
    if abs(mean) > mean_tol:
        raise NonZeroMeanError(f"inverse_A needs zero-mean input, mean={mean!r}")
    n = f.grid.n
    fhat = np.fft.fft(f.values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    denom = 4.0 * np.pi**2 * k**2
    denom[0] = 1.0
    coeff = fhat / denom
    coeff[0] = 0.0
    g = np.fft.ifft(coeff)
    g = g - g[0]
    if not f.is_complex:
        g = g.real
    return PeriodicFunction(f.grid, g)


def l2_inner(f: PeriodicFunction, g: PeriodicFunction):
    """L2 pairing integral(f * conj(g)); complex unless both inputs real."""
    vals = f.values * np.conj(g.values)
    m = np.mean(vals)
    return float(m.real) if not (f.is_complex or g.is_complex) else complex(m)


# ---------------------------------------------------------------------------
# trigonometric interpolation, composition, inversion
# ---------------------------------------------------------------------------


def trig_interpolate(f: PeriodicFunction, points) -> np.ndarray:
    """Evaluate the trigonometric interpolant of f at arbitrary points.

    The Nyquist coefficient is split symmetrically so real samples give the
    unique real interpolant containing cos(pi*n*x).
    """
    points = np.atleast_1d(np.asarray(points, dtype=float))
    n = f.grid.n
    c = np.fft.fft(f.values) / n
    half = n // 2
    k_ext = np.arange(-half, half + 1)
    c_ext = np.empty(n + 1, dtype=np.complex128)
    c_ext[half] = c[0]
    c_ext[half + 1 : 2 * half] = c[1:half]
    c_ext[:half] = c[half:]
    c_ext[0] = 0.5 * c[half]
    c_ext[-1] = 0.5 * c[half]
    pts = np.mod(points, 1.0)
    phase = np.exp(2j * np.pi * np.outer(pts, k_ext))
    out = phase @ c_ext
    # snap values at grid-coincident points to the exact samples
    idx = np.rint(pts * n)
    on_grid = np.abs(pts * n - idx) < 1e-12
    if np.any(on_grid):
        out[on_grid] = f.values[idx[on_grid].astype(int) % n]
    if not f.is_complex:
        out = out.real
    return out


def _lift_parts(phi: PeriodicFunction) -> np.ndarray:
    """Periodic part h = phi - x of a unit-slope lift."""
    return phi.values - phi.grid.x


def _check_increasing(phi: PeriodicFunction, tol: float = 1e-12) -> np.ndarray:
    """Reject non-increasing lifts; derivatives touching zero within

    roundoff count as violations where interpolation or inversion would be
    ill-conditioned (tol = 1e-12), while construction-level validation may
    pass ``tol=0.0`` to admit steep but strictly monotone maps.
    """
    h = PeriodicFunction(phi.grid, _lift_parts(phi))
    phix = 1.0 + derivative(h).values
    if np.min(phix) <= tol:
        raise NotMonotoneError(
            f"diffeomorphism derivative has min {np.min(phix):.3e}"
        )
    return phix


def compose(f: PeriodicFunction, phi: PeriodicFunction) -> PeriodicFunction:
    """Samples of f(phi(x)) for periodic f and a diffeomorphism lift phi."""
    _check_increasing(phi)
    return PeriodicFunction(f.grid, trig_interpolate(f, phi.values))


def compose_lift(
    g: PeriodicFunction, phi: PeriodicFunction, slope: float
) -> PeriodicFunction:
    """Samples of g(phi(x)) where g is a lift with g(x+1) = g(x) + slope.

    The linear part slope * phi(x) is carried exactly; only the periodic
    part of g is interpolated.
    """
    _check_increasing(phi)
    p = PeriodicFunction(g.grid, g.values - slope * g.grid.x)
    vals = slope * phi.values + trig_interpolate(p, phi.values)
    return PeriodicFunction(g.grid, vals)


def invert_diffeo(
    phi: PeriodicFunction, root_tol: float = ROOT_TOL
) -> PeriodicFunction:
    """Invert an increasing lift with phi(0) = 0, phi(1) = 1.

    Solves phi(y) = x_j for every node by bracketed root-finding on the
    trigonometric interpolant of the periodic part; the bracket
    [x - max(h), x - min(h)] always contains the root.
    """
    if abs(phi.values[0]) > 1e-9:
        raise ValueError(f"diffeomorphism must fix 0, phi(0)={phi.values[0]!r}")
    _check_increasing(phi)
    grid = phi.grid
    h = PeriodicFunction(grid, _lift_parts(phi))

    def lifted(y: float) -> float:
        return y + float(trig_interpolate(h, y)[0])

    hmax = float(np.max(h.values)) + 1e-3
    hmin = float(np.min(h.values)) - 1e-3
    out = np.empty(grid.n)
    out[0] = 0.0
    for j in range(1, grid.n):
        x = grid.x[j]
        lo, hi = x - hmax, x - hmin
        out[j] = brentq(lambda y: lifted(y) - x, lo, hi, xtol=root_tol)
    return PeriodicFunction(grid, out)
