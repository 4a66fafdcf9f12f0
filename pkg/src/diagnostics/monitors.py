"""
Run-time monitors for the quantities the well-posedness argument controls.

Every monitor is a pure function of the g-field; integrals are grid means
(|Ω| = 1), norms are Parseval-based.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..dynamics.rhs import chemical_potential_K
from ..potential.free_energy import PotentialParams
from ..spectral.grid import RealField, spectral_grid
from ..transform.change_of_variables import cosh2, lncosh, sech2

logger = logging.getLogger(__name__)

# Relative tolerance of the energy-dissipation soft gate
ENERGY_TOLERANCE = 1e-10
# Bounded monitors may not exceed this multiple of their early-run maximum
MONITOR_GROWTH_LIMIT = 10.0
EARLY_FRACTION = 0.1


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    mass_u: float
    energy: float
    max_abs_u: float
    max_abs_g: float
    grad_K_L2: float
    g_mean: float
    K_mean: float
    g_fluct_L2: float
    dissipation_check: Optional[float] = None

    @classmethod
    def columns(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


def free_energy_density_g(g: np.ndarray, p: PotentialParams) -> np.ndarray:
    """F(tanh g) in the overflow-free form θ(g·tanh g − ln cosh g) − (θ_c/2)tanh²g."""
    g = np.asarray(g, dtype=float)
    u = np.tanh(g)
    return p.theta * (g * u - lncosh(g)) - 0.5 * p.theta_c * u * u


def energy(g: RealField, p: PotentialParams) -> float:
    """Ginzburg–Landau energy ψ = ∫ (ν/2)|∇u|² + F(u), evaluated from g."""
    cosh2(g.values)  # guard
    sg = spectral_grid(g.grid)
    gx, gy = sg.gradient(g.values)
    s = sech2(g.values)
    density = 0.5 * p.nu * s * s * (gx * gx + gy * gy) + free_energy_density_g(g.values, p)
    return float(np.mean(density))


def mass(g: RealField) -> float:
    """Mean of u = tanh g."""
    return float(np.mean(np.tanh(g.values)))


def separation(g: RealField) -> Tuple[float, float]:
    """(max |u|, max |g|); max |u| is tanh of max |g| and so below 1 for finite g."""
    max_abs_g = float(np.max(np.abs(g.values)))
    return float(np.tanh(max_abs_g)), max_abs_g


def separation_gap(max_abs_g: float) -> float:
    """1 − tanh(max |g|) without cancellation."""
    return 2.0 / (1.0 + math.exp(2.0 * max_abs_g))


def grad_K_norm(g: RealField, p: PotentialParams) -> float:
    K = chemical_potential_K(g, p)
    return spectral_grid(g.grid).grad_l2_norm(K.values)


def record(s, prev_energy: Optional[float], p: PotentialParams) -> DiagnosticsRecord:
    """Fill a DiagnosticsRecord for a timestepper State."""
    g = s.g
    sg = spectral_grid(g.grid)
    K = chemical_potential_K(g, p)
    psi = energy(g, p)
    max_abs_u, max_abs_g = separation(g)
    g_mean = g.mean()
    return DiagnosticsRecord(
        t=float(s.t),
        mass_u=mass(g),
        energy=psi,
        max_abs_u=max_abs_u,
        max_abs_g=max_abs_g,
        grad_K_L2=sg.grad_l2_norm(K.values),
        g_mean=g_mean,
        K_mean=K.mean(),
        g_fluct_L2=sg.l2_norm(g.values - g_mean),
        dissipation_check=None if prev_energy is None else psi - prev_energy,
    )


def proof_monitors(g: RealField, p: PotentialParams) -> Dict[str, float]:
    """
    Extra a-priori quantities: ‖K‖∞, ‖g‖_{H²} and the coercivity gap.

    The gap ∫(K−K̄)(g−ḡ) + θ_c∫u(g−ḡ) − θ∫(g−ḡ)² equals ν∫∇u·∇g and must be
    nonnegative.
    """
    sg = spectral_grid(g.grid)
    K = chemical_potential_K(g, p).values
    u = np.tanh(g.values)
    fluct = g.values - g.mean()
    gap = (np.mean((K - K.mean()) * fluct)
           + p.theta_c * np.mean(u * fluct)
           - p.theta * np.mean(fluct * fluct))
    return {
        "K_sup": float(np.max(np.abs(K))),
        "g_H2": sg.h2_norm(g.values),
        "coercivity_gap": float(gap),
    }


@dataclass
class RunMonitor:
    """
    Soft gates evaluated over the records of one run.

    Energy increases beyond ENERGY_TOLERANCE·(1+|ψ|) and bounded monitors
    growing past MONITOR_GROWTH_LIMIT times their early maximum are logged
    as warnings and collected in `violations`.
    """

    violations: List[str] = field(default_factory=list)
    separation_floor: float = 1.0
    _records: List[DiagnosticsRecord] = field(default_factory=list, repr=False)

    BOUNDED = ("g_fluct_L2", "g_mean", "K_mean", "grad_K_L2")

    def observe(self, rec: DiagnosticsRecord) -> None:
        if self._records and rec.dissipation_check is not None:
            prev = self._records[-1].energy
            if rec.dissipation_check > ENERGY_TOLERANCE * (1.0 + abs(prev)):
                msg = f"energy increased by {rec.dissipation_check:.3e} at t={rec.t:.6g}"
                logger.warning(msg)
                self.violations.append(msg)
        self.separation_floor = min(self.separation_floor, separation_gap(rec.max_abs_g))
        self._records.append(rec)

    def finish(self) -> List[str]:
        """Run the bounded-monitor gate over everything observed."""
        if len(self._records) < 2:
            return self.violations
        early = max(1, math.ceil(EARLY_FRACTION * len(self._records)))
        for name in self.BOUNDED:
            values = [abs(getattr(r, name)) for r in self._records]
            reference = max(values[:early])
            late = max(values[early:], default=0.0)
            if late > MONITOR_GROWTH_LIMIT * reference and late > 1e-12:
                msg = f"{name} grew to {late:.3e}, more than {MONITOR_GROWTH_LIMIT:g}x its early maximum {reference:.3e}"
                logger.warning(msg)
                self.violations.append(msg)
        return self.violations

    @property
    def energy_ok(self) -> bool:
        return not any(v.startswith("energy") for v in self.violations)
