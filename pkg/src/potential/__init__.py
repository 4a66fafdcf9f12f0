"""Pointwise thermodynamic potential and its regularizations."""

from .free_energy import (
    DomainError,
    ParameterError,
    PotentialParams,
    binodal,
    f_of_u,
    fpp_of_u,
    fpp_quadratic,
    free_energy_F,
    linear_growth_rate,
    phi_eps,
    phi_eps_prime,
    quartic_F,
    regularized_F,
    regularized_f,
    spinodal,
    truncated_F,
    truncated_f,
)

__all__ = [
    'DomainError',
    'ParameterError',
    'PotentialParams',
    'binodal',
    'f_of_u',
    'fpp_of_u',
    'fpp_quadratic',
    'free_energy_F',
    'linear_growth_rate',
    'phi_eps',
    'phi_eps_prime',
    'quartic_F',
    'regularized_F',
    'regularized_f',
    'spinodal',
    'truncated_F',
    'truncated_f',
]
