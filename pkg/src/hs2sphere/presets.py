"""Named initial-data presets used by the command line tool and demos."""

from __future__ import annotations

import numpy as np

from .funcspace import PeriodicFunction, PeriodicGrid
from .geodesics import InitialData

PRESET_NAMES = ("stationary", "smooth-global", "hs-blowup")


def make_preset(name: str, grid: PeriodicGrid) -> InitialData:
    """stationary: (0, 2).  smooth-global: u0x = sin 2 pi x, rho0 = 1.5 + cos.
    hs-blowup: u0x = cos 2 pi x, rho0 = 0 (finite-time breakdown)."""
    if name == "stationary":
        return InitialData(
            PeriodicFunction.zeros(grid), PeriodicFunction.constant(grid, 2.0)
        )
    if name == "smooth-global":
        return InitialData.from_u0x(
            grid,
            lambda x: np.sin(2.0 * np.pi * x),
            lambda x: 1.5 + np.cos(2.0 * np.pi * x),
        )
    if name == "hs-blowup":
        return InitialData.from_u0x(
            grid,
            lambda x: np.cos(2.0 * np.pi * x),
            lambda x: np.zeros_like(x),
        )
    raise ValueError(f"unknown preset {name!r}; alternatives: {PRESET_NAMES}")
