"""
Field-level right-hand sides.

rhs_g assembles the expanded g-equation term by term; rhs_g_oracle evaluates
the unexpanded form cosh²(g)·ΔK straight from u = tanh g and serves as the
independent check of the expansion. rhs_u_direct is the classical
u-formulation used by the regularized baselines.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..potential.free_energy import PotentialParams, regularized_f, truncated_f
from ..spectral.grid import RealField, SpectralGrid, require_same_grid, spectral_grid
from ..transform.change_of_variables import (
    NumericalFailure,
    PointJet,
    cosh2,
    lap_u_expansion,
)

# Exact-log baseline refuses states with |u| above this bound
EXACT_LOG_BOUND = 1.0 - 1e-8


class SeparationViolationError(NumericalFailure):
    pass


@dataclass(frozen=True)
class PotentialMode:
    """Which f̃ the direct u-formulation uses."""

    kind: str = "exact-log"
    order: Optional[int] = None
    eps: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("exact-log", "truncated", "phi-eps"):
            raise ValueError(f"unknown potential mode {self.kind!r}")
        if self.kind == "truncated" and (self.order is None or self.order < 0):
            raise ValueError("truncated mode needs a nonnegative order N")
        if self.kind == "phi-eps" and (self.eps is None or not self.eps > 0):
            raise ValueError("phi-eps mode needs a positive eps")

    @classmethod
    def parse(cls, text: str) -> "PotentialMode":
        """Parse 'exactlog', 'truncated:N' or 'phieps:EPS'."""
        name, _, arg = text.strip().partition(":")
        name = name.lower().replace("-", "").replace("_", "")
        try:
            if name == "exactlog" and not arg:
                return cls("exact-log")
            if name == "truncated":
                return cls("truncated", order=int(arg))
            if name == "phieps":
                return cls("phi-eps", eps=float(arg))
        except ValueError as exc:
            raise ValueError(f"bad baseline argument in {text!r}: {exc}") from exc
        raise ValueError(f"unknown baseline {text!r}; expected exactlog, truncated:N or phieps:EPS")

    def label(self) -> str:
        if self.kind == "truncated":
            return f"truncated:{self.order}"
        if self.kind == "phi-eps":
            return f"phieps:{self.eps:g}"
        return "exactlog"


@dataclass
class RhsBreakdown:
    """The g-equation right-hand side, one field per displayed group."""

    linear_bilap: RealField
    cubic_group: RealField
    quartic_group: RealField
    quint_term: RealField
    lap_g_terms: RealField
    gradsq_term: RealField
    total: RealField

    def nonlinear_values(self) -> np.ndarray:
        """Everything except −νΔ²g, i.e. the Duhamel integrand of the mild form."""
        return (self.cubic_group.values + self.quartic_group.values + self.quint_term.values
                + self.lap_g_terms.values + self.gradsq_term.values)

    def terms(self) -> dict:
        return {
            "linear_bilap": self.linear_bilap,
            "cubic_group": self.cubic_group,
            "quartic_group": self.quartic_group,
            "quint_term": self.quint_term,
            "lap_g_terms": self.lap_g_terms,
            "gradsq_term": self.gradsq_term,
        }


def field_jet(g: np.ndarray, sg: SpectralGrid) -> PointJet:
    """
    PointJet of a grid function g.

    Derivatives are spectral; products are projected onto the 2/3 band and
    the divergence-form entries are divergences of those products.
    """
    g_hat = sg.fft(g)
    gx = sg.ifft(sg.ddx_hat(g_hat, 0))
    gy = sg.ifft(sg.ddx_hat(g_hat, 1))
    lap_hat = sg.lap_hat(g_hat)
    lap_g = sg.ifft(lap_hat)
    glx = sg.ifft(sg.ddx_hat(lap_hat, 0))
    gly = sg.ifft(sg.ddx_hat(lap_hat, 1))
    bilap_g = sg.ifft(sg.bilap_hat(g_hat))

    gradsq_hat = sg.dealias_hat(sg.fft(gx * gx + gy * gy))
    gradsq = sg.ifft(gradsq_hat)
    gsx = sg.ifft(sg.ddx_hat(gradsq_hat, 0))
    gsy = sg.ifft(sg.ddx_hat(gradsq_hat, 1))
    lap_gradsq = sg.ifft(sg.lap_hat(gradsq_hat))

    return PointJet(
        g=g,
        grad_g=(gx, gy),
        lap_g=lap_g,
        grad_lap_g=(glx, gly),
        bilap_g=bilap_g,
        grad_gradsq=(gsx, gsy),
        lap_gradsq=lap_gradsq,
        div_gradg_lapg=sg.divergence(gx * lap_g, gy * lap_g, dealias=True),
        div_gradg_gradsq=sg.divergence(gx * gradsq, gy * gradsq, dealias=True),
        gradg_dot_gradlapg=sg.project(gx * glx + gy * gly),
    )


def _chemical_potential_values(g: np.ndarray, p: PotentialParams, sg: SpectralGrid, mode: str) -> np.ndarray:
    u = np.tanh(g)
    if mode == "expansion":
        jet = replace(PointJet.zero(), g=g, grad_g=sg.gradient(g), lap_g=sg.laplacian(g))
        lap_u = lap_u_expansion(jet)
    elif mode == "spectral":
        lap_u = sg.laplacian(u)
    else:
        raise ValueError(f"mode must be 'expansion' or 'spectral', got {mode!r}")
    return -p.nu * lap_u - p.theta_c * u + p.theta * g


def chemical_potential_K(g: RealField, p: PotentialParams, mode: str = "expansion") -> RealField:
    """K = −νΔu − θ_c u + θg with u = tanh g."""
    cosh2(g.values)  # guard
    sg = spectral_grid(g.grid)
    return RealField(g.grid, _chemical_potential_values(g.values, p, sg, mode))


def rhs_g(g: RealField, p: PotentialParams) -> RhsBreakdown:
    """Right-hand side of the g-equation with its per-group breakdown."""
    sg = spectral_grid(g.grid)
    jet = field_jet(g.values, sg)
    c2 = cosh2(g.values)
    u = np.tanh(g.values)
    nu = p.nu
    gradsq = jet.gradsq
    gx, gy = jet.grad_g
    gsx, gsy = jet.grad_gradsq

    second_order = jet.lap_gradsq + jet.div_gradg_lapg + jet.gradg_dot_gradlapg
    third_order = (jet.div_gradg_gradsq
                   + sg.project(gx * gsx + gy * gsy)
                   + sg.project(gradsq * jet.lap_g))

    linear_bilap = -nu * jet.bilap_g
    cubic_group = sg.project(2.0 * nu * u * second_order)
    quartic_group = sg.project(-nu * (6.0 * u * u - 2.0) * third_order)
    quint_term = sg.project(nu * (24.0 * u**3 - 16.0 * u) * sg.project(gradsq * gradsq))
    lap_g_terms = -p.theta_c * jet.lap_g + sg.project(p.theta * c2 * jet.lap_g)
    gradsq_term = sg.project(2.0 * p.theta_c * u * gradsq)

    total = linear_bilap + cubic_group + quartic_group + quint_term + lap_g_terms + gradsq_term

    def wrap(values):
        return RealField(g.grid, values)

    return RhsBreakdown(
        linear_bilap=wrap(linear_bilap),
        cubic_group=wrap(cubic_group),
        quartic_group=wrap(quartic_group),
        quint_term=wrap(quint_term),
        lap_g_terms=wrap(lap_g_terms),
        gradsq_term=wrap(gradsq_term),
        total=wrap(total),
    )


def rhs_g_oracle(g: RealField, p: PotentialParams) -> RealField:
    """g_t = cosh²(g)·ΔK with K built spectrally from u = tanh g; no expanded identities."""
    c2 = cosh2(g.values)
    sg = spectral_grid(g.grid)
    K = _chemical_potential_values(g.values, p, sg, "spectral")
    return RealField(g.grid, c2 * sg.laplacian(K))


def potential_derivative(u: np.ndarray, p: PotentialParams, mode: PotentialMode) -> np.ndarray:
    """f̃(u) for the selected baseline potential."""
    if mode.kind == "exact-log":
        worst = float(np.max(np.abs(u)))
        if not worst <= EXACT_LOG_BOUND:
            raise SeparationViolationError(
                f"max |u| = {worst!r} reached the exact-log bound {EXACT_LOG_BOUND!r}; "
                "f(u) is meaningless here, evolve the g-formulation instead"
            )
        return -p.theta_c * u + p.theta * np.arctanh(u)
    if mode.kind == "truncated":
        return truncated_f(u, mode.order, p)
    return regularized_f(u, mode.eps, p)


def rhs_u_direct_values(u: np.ndarray, p: PotentialParams, mode: PotentialMode, sg: SpectralGrid) -> np.ndarray:
    f_tilde = sg.project(potential_derivative(u, p, mode))
    return sg.laplacian(-p.nu * sg.laplacian(u) + f_tilde)


def rhs_u_direct(u: RealField, p: PotentialParams, mode: PotentialMode) -> RealField:
    """u_t = Δ(−νΔu + f̃(u))."""
    return RealField(u.grid, rhs_u_direct_values(u.values, p, mode, spectral_grid(u.grid)))


def K_residual(K_prev: RealField, K_next: RealField, g_mid: RealField, dt: float, p: PotentialParams) -> float:
    """
    L² residual of K_t = −νΔ²K − θ_cΔK + θcosh²(g)ΔK across one step.

    The difference quotient (K_next − K_prev)/dt is compared with the
    right-hand side at K_mid = (K_prev + K_next)/2 and g_mid.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    grid = require_same_grid(K_prev, K_next, g_mid)
    sg = spectral_grid(grid)
    K_mid = 0.5 * (K_prev.values + K_next.values)
    lap_K = sg.laplacian(K_mid)
    rhs = -p.nu * sg.bilaplacian(K_mid) - p.theta_c * lap_K + p.theta * cosh2(g_mid.values) * lap_K
    residual = (K_next.values - K_prev.values) / dt - rhs
    return sg.l2_norm(residual)
