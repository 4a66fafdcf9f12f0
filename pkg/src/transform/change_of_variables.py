"""
The g = atanh(u) change of variables and the chain-rule expansions.

The expansions rebuild Δu, Δ∂ᵢu and Δ²u from derivatives of g. Coefficient
polynomials in u that carry a factor (1 − u²) are evaluated with sech²g in
place of 1 − tanh²g so they stay accurate when |u| is close to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..potential.free_energy import DomainError


class NumericalFailure(ArithmeticError):
    """Base class for failures that signal loss of separation control."""


class SeparationOverflowError(NumericalFailure):
    def __init__(self, value: float):
        self.value = value
        super().__init__(
            f"|g| = {value!r} exceeds the cosh² guard G_MAX = {G_MAX}; separation is numerically lost"
        )


# cosh²(300) ≈ 9.5e259, still inside float64 range
G_MAX = 300.0

_LN2 = np.log(2.0)
_TINY = np.finfo(float).tiny


def u_of_g(g):
    return np.tanh(g)


def g_of_u(u):
    u = np.asarray(u, dtype=float)
    if np.any(~(np.abs(u) < 1.0)):
        raise DomainError(f"g is only defined for |u| < 1, got max |u| = {float(np.max(np.abs(u)))!r}")
    return np.arctanh(u)


def lncosh(g):
    """ln cosh g = |g| + ln((1 + e^{−2|g|})/2), finite for every finite g."""
    a = np.abs(np.asarray(g, dtype=float))
    return a + np.log1p(np.exp(-2.0 * a)) - _LN2


def log_one_plus_u(g):
    """ln(1 + tanh g) without forming 1 + u."""
    return np.asarray(g, dtype=float) - lncosh(g)


def log_one_minus_u(g):
    """ln(1 − tanh g) without forming 1 − u."""
    return -np.asarray(g, dtype=float) - lncosh(g)


def sech2(g):
    """1 − tanh²g in the overflow-free form 4e^{−2|g|}/(1 + e^{−2|g|})²."""
    e = np.exp(-2.0 * np.abs(np.asarray(g, dtype=float)))
    value = 4.0 * e / ((1.0 + e) * (1.0 + e))
    # e^{−2|g|} underflows past |g| ≈ 354
    return np.maximum(value, _TINY)


def cosh2(g):
    """cosh²g = 1/(1 − u²), guarded against |g| > G_MAX."""
    g = np.asarray(g, dtype=float)
    worst = float(np.max(np.abs(g))) if g.size else 0.0
    if not worst <= G_MAX:
        raise SeparationOverflowError(worst)
    c = np.cosh(g)
    return c * c


@dataclass
class PointJet:
    """
    Every derivative combination of g entering the Δ²u expansion.

    Entries may be scalars or arrays of one common shape; vector entries
    are (x, y) tuples.
    """

    g: np.ndarray
    grad_g: Tuple[np.ndarray, np.ndarray]
    lap_g: np.ndarray
    grad_lap_g: Tuple[np.ndarray, np.ndarray]
    bilap_g: np.ndarray
    grad_gradsq: Tuple[np.ndarray, np.ndarray]
    lap_gradsq: np.ndarray
    div_gradg_lapg: np.ndarray
    div_gradg_gradsq: np.ndarray
    gradg_dot_gradlapg: np.ndarray

    @classmethod
    def zero(cls) -> "PointJet":
        return cls(
            g=0.0, grad_g=(0.0, 0.0), lap_g=0.0, grad_lap_g=(0.0, 0.0), bilap_g=0.0,
            grad_gradsq=(0.0, 0.0), lap_gradsq=0.0, div_gradg_lapg=0.0,
            div_gradg_gradsq=0.0, gradg_dot_gradlapg=0.0,
        )

    @property
    def gradsq(self):
        gx, gy = self.grad_g
        return gx * gx + gy * gy

    def is_finite(self) -> bool:
        parts = [self.g, self.lap_g, self.bilap_g, self.lap_gradsq, self.div_gradg_lapg,
                 self.div_gradg_gradsq, self.gradg_dot_gradlapg,
                 *self.grad_g, *self.grad_lap_g, *self.grad_gradsq]
        return all(np.all(np.isfinite(x)) for x in parts)


def _coefficients(g):
    """
    u and the expansion coefficients as functions of g.

    Returns (u, s, b, c, d) with s = 1 − u², b = 2u³ − 2u,
    c = −6u⁴ + 8u² − 2 and d = (−24u³ + 16u)(1 − u²).
    """
    u = np.tanh(g)
    s = sech2(g)
    b = -2.0 * u * s
    c = (6.0 * u * u - 2.0) * s
    d = (16.0 * u - 24.0 * u * u * u) * s
    return u, s, b, c, d


def lap_u_expansion(j: PointJet):
    """Δu = (1 − u²)Δg + (2u³ − 2u)|∇g|²."""
    _, s, b, _, _ = _coefficients(j.g)
    return s * j.lap_g + b * j.gradsq


def grad_lap_u_expansion(j: PointJet):
    """Δ∂ᵢu for i = x, y."""
    _, s, b, c, _ = _coefficients(j.g)
    gradsq = j.gradsq
    out = []
    for gi, gli, gsi in zip(j.grad_g, j.grad_lap_g, j.grad_gradsq):
        out.append(s * gli + b * gsi + b * gi * j.lap_g + c * gi * gradsq)
    return tuple(out)


def bilap_u_expansion(j: PointJet):
    """Δ²u assembled from the jet, grouped as in the g-equation."""
    _, s, b, c, d = _coefficients(j.g)
    gradsq = j.gradsq
    gx, gy = j.grad_g
    gsx, gsy = j.grad_gradsq
    second_order = j.lap_gradsq + j.div_gradg_lapg + j.gradg_dot_gradlapg
    third_order = j.div_gradg_gradsq + (gx * gsx + gy * gsy) + gradsq * j.lap_g
    return s * j.bilap_g + b * second_order + c * third_order + d * gradsq * gradsq
