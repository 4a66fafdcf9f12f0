"""Energy, mass, separation and chemical-potential monitors."""

from .monitors import (
    DiagnosticsRecord,
    RunMonitor,
    energy,
    free_energy_density_g,
    grad_K_norm,
    mass,
    proof_monitors,
    record,
    separation,
    separation_gap,
)

__all__ = [
    'DiagnosticsRecord',
    'RunMonitor',
    'energy',
    'free_energy_density_g',
    'grad_K_norm',
    'mass',
    'proof_monitors',
    'record',
    'separation',
    'separation_gap',
]
