"""Right-hand sides of the g-equation, its oracle, and the direct u-formulation."""

from .rhs import (
    EXACT_LOG_BOUND,
    K_residual,
    PotentialMode,
    RhsBreakdown,
    SeparationViolationError,
    chemical_potential_K,
    field_jet,
    potential_derivative,
    rhs_g,
    rhs_g_oracle,
    rhs_u_direct,
    rhs_u_direct_values,
)

__all__ = [
    'EXACT_LOG_BOUND',
    'K_residual',
    'PotentialMode',
    'RhsBreakdown',
    'SeparationViolationError',
    'chemical_potential_K',
    'field_jet',
    'potential_derivative',
    'rhs_g',
    'rhs_g_oracle',
    'rhs_u_direct',
    'rhs_u_direct_values',
]
