"""
Periodic grid on the unit torus [−½, ½)² and its Fourier calculus.

Conventions:
  - values[i, j] samples the field at (x_i, y_j), x_i = −½ + i/n
  - forward transform unnormalized, inverse carries 1/n², so
    mean(f) = coeffs[0, 0] / n²
  - wavenumber k = 2πm for integer modes m ∈ {−n/2, …, n/2 − 1}
  - the Nyquist mode m = −n/2 is zeroed in odd-order derivative
    multipliers and kept in even-order ones
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np


class GridError(ValueError):
    pass


class GridMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """n points per dimension on the unit periodic square."""

    n: int = 128
    side: float = 1.0

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise GridError(f"n must be an integer, got {self.n!r}")
        if self.n < 8 or self.n % 2:
            raise GridError(f"n must be even and at least 8, got {self.n}")
        if self.side != 1.0:
            raise GridError(f"the domain side is fixed at 1, got {self.side}")

    @property
    def spacing(self) -> float:
        return self.side / self.n

    @property
    def points(self) -> np.ndarray:
        return -0.5 + np.arange(self.n) / self.n

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        x = self.points
        return np.meshgrid(x, x, indexing="ij")

    @property
    def cutoff(self) -> int:
        """Largest mode index kept by the 2/3 rule."""
        return self.n // 3


@dataclass
class RealField:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        shape = (self.grid.n, self.grid.n)
        if self.values.shape != shape:
            raise GridMismatchError(f"values of shape {self.values.shape} do not fit grid {shape}")

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def mean(self) -> float:
        return float(np.mean(self.values))

    def copy(self) -> "RealField":
        return RealField(self.grid, self.values.copy())


@dataclass
class SpectralField:
    grid: GridSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        shape = (self.grid.n, self.grid.n)
        if self.coeffs.shape != shape:
            raise GridMismatchError(f"coefficients of shape {self.coeffs.shape} do not fit grid {shape}")


def require_same_grid(*fields) -> GridSpec:
    grids = {f.grid for f in fields}
    if len(grids) != 1:
        raise GridMismatchError(f"fields live on different grids: {sorted(g.n for g in grids)}")
    return fields[0].grid


class SpectralGrid:
    """
    Immutable wavenumber tables and spectral operators for one GridSpec.

    Operators here work on raw arrays; the module-level functions below wrap
    them for RealField/SpectralField values.
    """

    def __init__(self, spec: GridSpec):
        self.spec = spec
        n = spec.n
        m = np.fft.fftfreq(n, d=1.0 / n).round().astype(int)
        mx, my = np.meshgrid(m, m, indexing="ij")
        self.mx = mx
        self.my = my

        k = 2.0 * np.pi * m / spec.side
        kx, ky = np.meshgrid(k, k, indexing="ij")
        self.kx = kx
        self.ky = ky
        self.k2 = kx * kx + ky * ky
        self.k4 = self.k2 * self.k2

        odd = k.copy()
        odd[m == -n // 2] = 0.0
        self.kx_odd, self.ky_odd = np.meshgrid(odd, odd, indexing="ij")

        self.dealias_mask = (3 * np.abs(mx) <= n) & (3 * np.abs(my) <= n)

        for arr in (self.mx, self.my, self.kx, self.ky, self.k2, self.k4,
                    self.kx_odd, self.ky_odd, self.dealias_mask):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.spec.n

    # ---- transforms ----

    def fft(self, values: np.ndarray) -> np.ndarray:
        return np.fft.fft2(values)

    def ifft(self, coeffs: np.ndarray) -> np.ndarray:
        return np.fft.ifft2(coeffs).real

    # ---- operators on coefficients ----

    def ddx_hat(self, coeffs: np.ndarray, axis: int) -> np.ndarray:
        k = self.kx_odd if axis == 0 else self.ky_odd
        return 1j * k * coeffs

    def lap_hat(self, coeffs: np.ndarray) -> np.ndarray:
        return -self.k2 * coeffs

    def bilap_hat(self, coeffs: np.ndarray) -> np.ndarray:
        return self.k4 * coeffs

    def dealias_hat(self, coeffs: np.ndarray) -> np.ndarray:
        return np.where(self.dealias_mask, coeffs, 0.0)

    # ---- operators on grid values ----

    def derivative(self, values: np.ndarray, axis: int) -> np.ndarray:
        return self.ifft(self.ddx_hat(self.fft(values), axis))

    def gradient(self, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        coeffs = self.fft(values)
        return self.ifft(self.ddx_hat(coeffs, 0)), self.ifft(self.ddx_hat(coeffs, 1))

    def laplacian(self, values: np.ndarray) -> np.ndarray:
        return self.ifft(self.lap_hat(self.fft(values)))

    def bilaplacian(self, values: np.ndarray) -> np.ndarray:
        return self.ifft(self.bilap_hat(self.fft(values)))

    def divergence(self, vx: np.ndarray, vy: np.ndarray, dealias: bool = False) -> np.ndarray:
        """∂ₓvx + ∂ᵧvy, optionally projecting each component onto the 2/3 band first."""
        hx = self.fft(vx)
        hy = self.fft(vy)
        if dealias:
            hx = self.dealias_hat(hx)
            hy = self.dealias_hat(hy)
        return self.ifft(self.ddx_hat(hx, 0) + self.ddx_hat(hy, 1))

    def project(self, values: np.ndarray) -> np.ndarray:
        """Pointwise values of the 2/3-rule projection of a grid function."""
        return self.ifft(self.dealias_hat(self.fft(values)))

    def dealiased_product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.project(a * b)

    # ---- norms (unit area, Parseval) ----

    def l2_norm(self, values: np.ndarray) -> float:
        return float(np.sqrt(np.mean(values * values)))

    def h2_norm(self, values: np.ndarray) -> float:
        coeffs = self.fft(values)
        weight = (1.0 + self.k2) ** 2
        return float(np.sqrt(np.sum(weight * np.abs(coeffs) ** 2)) / self.n**2)

    def grad_l2_norm(self, values: np.ndarray) -> float:
        coeffs = self.fft(values)
        weight = self.kx_odd**2 + self.ky_odd**2
        return float(np.sqrt(np.sum(weight * np.abs(coeffs) ** 2)) / self.n**2)


@lru_cache(maxsize=16)
def spectral_grid(spec: GridSpec) -> SpectralGrid:
    return SpectralGrid(spec)


# ---- RealField / SpectralField surface ----

def forward(f: RealField) -> SpectralField:
    return SpectralField(f.grid, spectral_grid(f.grid).fft(f.values))


def inverse(F: SpectralField) -> RealField:
    return RealField(F.grid, spectral_grid(F.grid).ifft(F.coeffs))


def derivative(f: RealField, axis: int) -> RealField:
    if axis not in (0, 1):
        raise GridError(f"axis must be 0 (x) or 1 (y), got {axis!r}")
    return RealField(f.grid, spectral_grid(f.grid).derivative(f.values, axis))


def gradient(f: RealField) -> Tuple[RealField, RealField]:
    gx, gy = spectral_grid(f.grid).gradient(f.values)
    return RealField(f.grid, gx), RealField(f.grid, gy)


def laplacian(f: RealField) -> RealField:
    return RealField(f.grid, spectral_grid(f.grid).laplacian(f.values))


def bilaplacian(f: RealField) -> RealField:
    return RealField(f.grid, spectral_grid(f.grid).bilaplacian(f.values))


def divergence(vx: RealField, vy: RealField) -> RealField:
    grid = require_same_grid(vx, vy)
    return RealField(grid, spectral_grid(grid).divergence(vx.values, vy.values))


def dealias(F: SpectralField) -> SpectralField:
    return SpectralField(F.grid, spectral_grid(F.grid).dealias_hat(F.coeffs))


def dealiased_product(a: RealField, b: RealField) -> RealField:
    grid = require_same_grid(a, b)
    return RealField(grid, spectral_grid(grid).dealiased_product(a.values, b.values))


def band_limited_noise(grid: GridSpec, band: int, sup_norm: float, rng: np.random.Generator) -> np.ndarray:
    """
    Zero-mean random field with modes max(|m_x|, |m_y|) ≤ band, scaled to a sup norm.

    Args:
        grid: target grid
        band: largest mode index kept (clipped to the 2/3 cutoff)
        sup_norm: max |value| of the returned field
        rng: numpy Generator; the draw is fully determined by its state

    Returns:
        n×n float64 array
    """
    if band < 1:
        raise GridError(f"band must be at least 1, got {band}")
    sg = spectral_grid(grid)
    band = min(band, grid.cutoff)
    coeffs = sg.fft(rng.standard_normal((grid.n, grid.n)))
    keep = (np.abs(sg.mx) <= band) & (np.abs(sg.my) <= band)
    coeffs = np.where(keep, coeffs, 0.0)
    coeffs[0, 0] = 0.0
    values = sg.ifft(coeffs)
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return values
    return values * (sup_norm / peak)


def _pad_axis(coeffs: np.ndarray, n: int, axis: int) -> np.ndarray:
    """Zero-pad unnormalized FFT coefficients along one axis, splitting the Nyquist mode."""
    src = coeffs.shape[axis]
    if n == src:
        return coeffs
    c = np.moveaxis(coeffs, axis, 0)
    half = src // 2
    out = np.zeros((n,) + c.shape[1:], dtype=complex)
    out[:half] = c[:half]
    out[n - half + 1:] = c[half + 1:]
    out[half] = 0.5 * c[half]
    out[n - half] = 0.5 * c[half]
    return np.moveaxis(out, 0, axis)


def interpolate(f: RealField, n: int) -> RealField:
    """
    Trigonometric interpolation of f onto the finer n-point grid.

    The coarse points are every (n / f.grid.n)-th fine point, and the
    interpolant agrees with f there.
    """
    src = f.grid.n
    if n < src:
        raise GridError(f"can only interpolate onto a finer grid, got n={n} < {src}")
    target = GridSpec(n=n)
    coeffs = np.fft.fft2(f.values)
    padded = _pad_axis(_pad_axis(coeffs, n, 0), n, 1)
    return RealField(target, np.fft.ifft2(padded).real * (n / src) ** 2)
