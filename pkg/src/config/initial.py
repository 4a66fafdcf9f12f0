"""Initial g-fields from an IC section. All generators work in the g variable, so |u₀| < 1 holds by construction."""

import numpy as np

from ..spectral.grid import GridSpec, RealField, band_limited_noise, spectral_grid
from ..transform.change_of_variables import g_of_u
from .models import RandomPerturbationIC, SingleModeIC, TanhStripeIC


def make_initial(ic, grid: GridSpec, seed: int) -> RealField:
    """
    Build g₀ for an IC section; deterministic in (ic, grid, seed).

    Args:
        ic: RandomPerturbationIC, TanhStripeIC or SingleModeIC
        grid: target grid
        seed: seed of numpy's default_rng (only the random IC draws from it)

    Returns:
        g₀ as a RealField
    """
    if isinstance(ic, RandomPerturbationIC):
        rng = np.random.default_rng(seed)
        noise = band_limited_noise(grid, ic.band, ic.amplitude, rng)
        return RealField(grid, float(g_of_u(ic.mean_u)) + noise)

    X, Y = grid.mesh()
    if isinstance(ic, SingleModeIC):
        mx, my = ic.m
        return RealField(grid, ic.amplitude * np.cos(2.0 * np.pi * (mx * X + my * Y)))

    if isinstance(ic, TanhStripeIC):
        raw = ic.amplitude * np.tanh(np.cos(2.0 * np.pi * X) / ic.width)
        return RealField(grid, spectral_grid(grid).project(raw))

    raise TypeError(f"unsupported initial condition {type(ic).__name__}")
