"""
Exponential time integration of the g-equation.

This package provides:
- EtdIntegrator with the ETD1 / ETDRK2 steps over the exact semigroup of −νΔ²
- run() with diagnostics, snapshots and failure handling
- convergence studies and the u-formulation baselines
"""

from .baseline import ComparisonResult, ComparisonRow, baseline_energy, compare_formulations, u_nonlinearity
from .etd import (
    EtdIntegrator,
    SchemeKind,
    SchemeSpec,
    SeparationLossError,
    State,
    advance,
    check_separated,
    g_integrator,
    g_nonlinearity,
    step_etd1,
    step_etdrk2,
)
from .runner import (
    ConvergenceRow,
    ConvergenceSetupError,
    RunResult,
    Snapshot,
    convergence_study,
    evolve,
    run,
    unstable_mode_count,
)

__all__ = [
    'ComparisonResult',
    'ComparisonRow',
    'ConvergenceRow',
    'ConvergenceSetupError',
    'EtdIntegrator',
    'RunResult',
    'SchemeKind',
    'SchemeSpec',
    'SeparationLossError',
    'Snapshot',
    'State',
    'advance',
    'baseline_energy',
    'check_separated',
    'compare_formulations',
    'convergence_study',
    'evolve',
    'g_integrator',
    'g_nonlinearity',
    'run',
    'step_etd1',
    'step_etdrk2',
    'u_nonlinearity',
]
