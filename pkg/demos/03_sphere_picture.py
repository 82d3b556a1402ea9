"""The sphere picture: isometry, exponential map, and reachability.

Group elements correspond one-to-one with nowhere-vanishing unit-norm
complex functions, and the correspondence preserves the metric.  Great
circles through the constant function 1 translate into explicit
geodesics on the group, whose reachability classification has exactly
four outcomes.

Run:  python demos/03_sphere_picture.py
"""

import numpy as np

import hs2sphere.randfields as rf
from hs2sphere import (
    GroupElement,
    PeriodicFunction,
    PeriodicGrid,
    connect,
    exact_geodesic,
    log_map,
    metric,
    multiply,
    phi_inverse,
    phi_map,
    speed,
    tangent_phi,
)

grid = PeriodicGrid(256)
rng = np.random.default_rng(3)

# the isometry and its inverse round trip at spectral accuracy
a = rf.group_element(grid, rng)
f = phi_map(a)
back = phi_inverse(f)
print(f"|Phi^-1(Phi(a)) - a|       = {back.distance(a):.3e}")
print(f"| ||Phi(a)|| - 1 |          = {abs(f.f.l2_norm() - 1.0):.3e}")

U, V = rf.g_tangent(grid, rng), rf.g_tangent(grid, rng)
TU, TV = tangent_phi(a, U), tangent_phi(a, V)
pairing = float(np.mean((TU.values * np.conj(TV.values)).real))
print(f"|<T Phi U, T Phi V> - <U, V>| = {abs(pairing - metric(a, U, V)):.3e}")

# log recovers the data that exponentiates to a target
d = rf.initial_data(grid, rng, global_existence=True, speed_range=(0.5, 2.0))
target = exact_geodesic(d, 1.0)
res = log_map(target)
rec = res.principal_data()
print(f"\nlog map kind: {res.kind}; r0 = {res.r0:.6f} = speed {speed(d):.6f}")
print(f"recovered data error: {np.max(np.abs(rec.u0.values - d.u0.values)):.3e}")

# the four reachability outcomes
print("\nreachability of b from a:")
b = rf.group_element(grid, rng)
print(f"  a vs a:                      {connect(a, a).kind}")
shift = GroupElement(
    PeriodicFunction(grid, grid.x),
    PeriodicFunction.constant(grid, 2.0 * np.pi),
    0,
)
print(f"  a vs a (id, 2 pi):           {connect(a, multiply(a, shift)).kind}")

touching = GroupElement(
    PeriodicFunction(grid, grid.x),
    PeriodicFunction(grid, 2.0 * np.sin(2 * np.pi * grid.x)),
    0,
)
print(f"  phase difference touching 1:  {connect(multiply(touching, b), b).kind}")

blocked = GroupElement(
    PeriodicFunction(grid, grid.x),
    PeriodicFunction(grid, 2.0 * np.pi + 2.0 * np.sin(2 * np.pi * grid.x)),
    0,
)
print(f"  phase difference hitting -1:  {connect(multiply(blocked, b), b).kind}")
print(f"  generic pair:                 {connect(a, b).kind}")
