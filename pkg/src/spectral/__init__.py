"""
Periodic 2D spectral calculus.

This package provides:
- GridSpec / RealField / SpectralField and the cached SpectralGrid tables
- spectral derivatives, 2/3-rule dealiasing and Parseval norms
- semigroup and φ-function multipliers for exponential integrators
"""

from .grid import (
    GridError,
    GridMismatchError,
    GridSpec,
    RealField,
    SpectralField,
    SpectralGrid,
    band_limited_noise,
    bilaplacian,
    dealias,
    dealiased_product,
    derivative,
    divergence,
    forward,
    gradient,
    interpolate,
    inverse,
    laplacian,
    require_same_grid,
    spectral_grid,
)
from .multipliers import (
    SERIES_CROSSOVER,
    phi1,
    phi1_multiplier,
    phi2,
    phi2_multiplier,
    semigroup_multiplier,
)

__all__ = [
    'GridError',
    'GridMismatchError',
    'GridSpec',
    'RealField',
    'SERIES_CROSSOVER',
    'SpectralField',
    'SpectralGrid',
    'band_limited_noise',
    'bilaplacian',
    'dealias',
    'dealiased_product',
    'derivative',
    'divergence',
    'forward',
    'gradient',
    'interpolate',
    'inverse',
    'laplacian',
    'phi1',
    'phi1_multiplier',
    'phi2',
    'phi2_multiplier',
    'require_same_grid',
    'semigroup_multiplier',
    'spectral_grid',
]
