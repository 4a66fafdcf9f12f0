"""
Flory-Huggins free energy and its regularized relatives.

All functions are pointwise and vectorized: they accept Python floats or
numpy arrays and return the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize


class DomainError(ValueError):
    pass


class ParameterError(ValueError):
    pass


# Bisection bracket and tolerance for the binodal solve
BINODAL_LOWER = 1e-12
BINODAL_XTOL = 1e-14


@dataclass(frozen=True)
class PotentialParams:
    """Physical constants of the free energy (deep-quench regime)."""

    theta: float = 1.0
    theta_c: float = 2.0
    nu: float = 1.0

    def __post_init__(self):
        for name in ("theta", "theta_c", "nu"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ParameterError(f"{name} must be a positive finite number, got {value!r}")
        if self.theta >= self.theta_c:
            raise ParameterError(
                f"theta must be below theta_c (deep quench), got theta={self.theta}, theta_c={self.theta_c}"
            )

    @property
    def quench_ratio(self) -> float:
        return self.theta / self.theta_c


def _require_open_interval(u, what: str = "u"):
    arr = np.asarray(u, dtype=float)
    if np.any(~(np.abs(arr) < 1.0)):
        worst = float(np.max(np.abs(arr)))
        raise DomainError(f"{what} must satisfy |{what}| < 1, got max |{what}| = {worst!r}")
    return arr


def _require_deep_quench(p: PotentialParams):
    # PotentialParams validates on construction; this guards duck-typed callers
    if not (0 < p.theta < p.theta_c):
        raise DomainError(f"no positive root unless 0 < theta < theta_c (theta={p.theta}, theta_c={p.theta_c})")


def free_energy_F(u, p: PotentialParams):
    """F(u) = (θ/2)[(1+u)ln(1+u) + (1−u)ln(1−u)] − (θ_c/2)u²."""
    u = _require_open_interval(u)
    mixing = (1.0 + u) * np.log1p(u) + (1.0 - u) * np.log1p(-u)
    return 0.5 * p.theta * mixing - 0.5 * p.theta_c * u * u


def f_of_u(u, p: PotentialParams):
    """f = F′(u) = −θ_c u + (θ/2)ln((1+u)/(1−u))."""
    u = _require_open_interval(u)
    return -p.theta_c * u + p.theta * np.arctanh(u)


def fpp_of_u(u, p: PotentialParams):
    """F″(u) = θ/(1−u²) − θ_c."""
    u = _require_open_interval(u)
    return p.theta / ((1.0 - u) * (1.0 + u)) - p.theta_c


def fpp_quadratic(u, p: PotentialParams):
    """Shallow-quench approximation F″ ≈ θ(1+u²) − θ_c."""
    u = np.asarray(u, dtype=float)
    return p.theta * (1.0 + u * u) - p.theta_c


def binodal(p: PotentialParams) -> float:
    """
    Positive binodal point u₊, the nonzero root of f on (0, 1).

    The solve runs in the transformed variable, where f(tanh g) = 0 reads
    g = (θ_c/θ)·tanh g. The root lies in (0, θ_c/θ) for every deep quench,
    so the bracket never degenerates even when u₊ is within rounding of 1.
    """
    _require_deep_quench(p)
    ratio = p.theta_c / p.theta

    def residual(g: float) -> float:
        return p.theta * g - p.theta_c * np.tanh(g)

    g_plus = optimize.bisect(residual, BINODAL_LOWER, ratio + 1.0, xtol=BINODAL_XTOL, maxiter=200)
    return float(np.tanh(g_plus))


def spinodal(p: PotentialParams) -> float:
    """u_s = (1 − θ/θ_c)^{1/2}; F″ < 0 on (−u_s, u_s)."""
    _require_deep_quench(p)
    return float(np.sqrt(1.0 - p.theta / p.theta_c))


def truncated_F(u, N: int, p: PotentialParams):
    """Polynomial regularization F_N: the series of F truncated after k = N."""
    if N < 0:
        raise DomainError(f"truncation order must be nonnegative, got {N}")
    u = np.asarray(u, dtype=float)
    u2 = u * u
    power = u2.copy()
    series = np.zeros_like(u2)
    for k in range(N + 1):
        series = series + power / ((2 * k + 1) * (2 * k + 2))
        power = power * u2
    return -0.5 * p.theta_c * u2 + p.theta * series


def truncated_f(u, N: int, p: PotentialParams):
    """F_N′(u) = −θ_c u + θ Σ_{k≤N} u^{2k+1}/(2k+1)."""
    if N < 0:
        raise DomainError(f"truncation order must be nonnegative, got {N}")
    u = np.asarray(u, dtype=float)
    u2 = u * u
    power = u.copy()
    series = np.zeros_like(u)
    for k in range(N + 1):
        series = series + power / (2 * k + 1)
        power = power * u2
    return -p.theta_c * u + p.theta * series


def quartic_F(u, p: PotentialParams):
    """F_quartic(u) = (θ/2)(u⁴/6) + ((θ − θ_c)/2)u²."""
    u = np.asarray(u, dtype=float)
    u2 = u * u
    return 0.5 * p.theta * u2 * u2 / 6.0 + 0.5 * (p.theta - p.theta_c) * u2


def phi_eps(r, eps: float):
    """ln r for r ≥ ε, continued linearly (C¹) below ε."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    r = np.asarray(r, dtype=float)
    safe = np.maximum(r, eps)
    return np.where(r >= eps, np.log(safe), np.log(eps) - 1.0 + r / eps)


def phi_eps_prime(r, eps: float):
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    r = np.asarray(r, dtype=float)
    safe = np.maximum(r, eps)
    return np.where(r >= eps, 1.0 / safe, 1.0 / eps)


def regularized_f(u, eps: float, p: PotentialParams):
    """f with both logarithms replaced by φ_ε; defined for every real u."""
    u = np.asarray(u, dtype=float)
    return -p.theta_c * u + 0.5 * p.theta * (phi_eps(1.0 + u, eps) - phi_eps(1.0 - u, eps))


def _phi_eps_antiderivative(r, eps: float):
    # r ln r − r above eps, matched in value and slope to phi_eps below
    r = np.asarray(r, dtype=float)
    safe = np.maximum(r, eps)
    log_eps = np.log(eps)
    below = eps * log_eps - eps + (log_eps - 1.0) * (r - eps) + (r * r - eps * eps) / (2.0 * eps)
    return np.where(r >= eps, safe * np.log(safe) - safe, below)


def regularized_F(u, eps: float, p: PotentialParams):
    """F_ε with F_ε′ = regularized_f; equals F wherever 1 ± u ≥ ε."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    u = np.asarray(u, dtype=float)
    mixing = _phi_eps_antiderivative(1.0 + u, eps) + _phi_eps_antiderivative(1.0 - u, eps) + 2.0
    return 0.5 * p.theta * mixing - 0.5 * p.theta_c * u * u


def linear_growth_rate(k2, u_bar: float, p: PotentialParams):
    """
    Growth rate of a small Fourier perturbation of the uniform state ū.

    Args:
        k2: squared wavenumber |k|² (scalar or array)
        u_bar: uniform background value, |ū| < 1
        p: potential parameters

    Returns:
        −|k|²(ν|k|² + F″(ū)); positive only inside the spinodal interval
    """
    k2 = np.asarray(k2, dtype=float)
    return -k2 * (p.nu * k2 + fpp_of_u(u_bar, p))
