"""
g ↔ u change of variables.

This package provides:
- the stable hyperbolic helpers (sech², cosh², ln cosh)
- the PointJet of g-derivatives and the chain-rule expansions of Δu, Δ∂ᵢu, Δ²u
"""

from .change_of_variables import (
    G_MAX,
    NumericalFailure,
    PointJet,
    SeparationOverflowError,
    bilap_u_expansion,
    cosh2,
    g_of_u,
    grad_lap_u_expansion,
    lap_u_expansion,
    lncosh,
    log_one_minus_u,
    log_one_plus_u,
    sech2,
    u_of_g,
)

__all__ = [
    'G_MAX',
    'NumericalFailure',
    'PointJet',
    'SeparationOverflowError',
    'bilap_u_expansion',
    'cosh2',
    'g_of_u',
    'grad_lap_u_expansion',
    'lap_u_expansion',
    'lncosh',
    'log_one_minus_u',
    'log_one_plus_u',
    'sech2',
    'u_of_g',
]
