"""Run-file schema, loading and initial conditions."""

from .initial import make_initial
from .loader import ConfigError, load_config, override_config, parse_config, parse_config_data, serialize_config
from .models import (
    GridSection,
    ParamsSection,
    RandomPerturbationIC,
    RunConfig,
    SchemeSection,
    SingleModeIC,
    TanhStripeIC,
)

__all__ = [
    'ConfigError',
    'GridSection',
    'ParamsSection',
    'RandomPerturbationIC',
    'RunConfig',
    'SchemeSection',
    'SingleModeIC',
    'TanhStripeIC',
    'load_config',
    'make_initial',
    'override_config',
    'parse_config',
    'parse_config_data',
    'serialize_config',
]
