"""Exact semigroup and φ-function multipliers of L = −νΔ² for the ETD schemes."""

from __future__ import annotations

import numpy as np

from .grid import GridSpec, SpectralField, spectral_grid

# Below this |z| the φ-functions switch to their Taylor series
SERIES_CROSSOVER = 1e-5


def _z(dt: float, nu: float, grid: GridSpec) -> np.ndarray:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    return -nu * spectral_grid(grid).k4 * dt


def phi1(z: np.ndarray) -> np.ndarray:
    """φ₁(z) = (e^z − 1)/z, with φ₁(0) = 1."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < SERIES_CROSSOVER
    safe = np.where(small, 1.0, z)
    series = 1.0 + z / 2.0 + z * z / 6.0
    return np.where(small, series, np.expm1(safe) / safe)


def phi2(z: np.ndarray) -> np.ndarray:
    """φ₂(z) = (φ₁(z) − 1)/z, with φ₂(0) = ½."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < SERIES_CROSSOVER
    safe = np.where(small, 1.0, z)
    series = 0.5 + z / 6.0 + z * z / 24.0
    return np.where(small, series, (phi1(safe) - 1.0) / safe)


def semigroup_multiplier(dt: float, nu: float, grid: GridSpec) -> SpectralField:
    """
    e^{−ν|k|⁴dt} per mode; exactly 1 at k = 0.

    Clamped below at the smallest positive normal float, so every entry
    lies in (0, 1] even where the exponential underflows.
    """
    return SpectralField(grid, np.maximum(np.exp(_z(dt, nu, grid)), np.finfo(np.float64).tiny))


def phi1_multiplier(dt: float, nu: float, grid: GridSpec) -> SpectralField:
    return SpectralField(grid, phi1(_z(dt, nu, grid)))


def phi2_multiplier(dt: float, nu: float, grid: GridSpec) -> SpectralField:
    return SpectralField(grid, phi2(_z(dt, nu, grid)))
