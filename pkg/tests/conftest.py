"""
Pytest configuration and fixtures for the solver tests.
"""

import pytest
import numpy as np
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.potential import PotentialParams
from src.spectral import GridSpec, RealField, band_limited_noise, spectral_grid
from src.config import RunConfig


@pytest.fixture(scope="session")
def params():
    """Default deep-quench parameters (θ=1, θ_c=2, ν=1)"""
    return PotentialParams()


@pytest.fixture(scope="session")
def grid128():
    return GridSpec(n=128)


@pytest.fixture(scope="session")
def grid64():
    return GridSpec(n=64)


@pytest.fixture(scope="session")
def grid32():
    return GridSpec(n=32)


@pytest.fixture(scope="session")
def grid16():
    return GridSpec(n=16)


@pytest.fixture(scope="session")
def sg128(grid128):
    return spectral_grid(grid128)


@pytest.fixture(scope="session")
def band_limited_fields(grid128):
    """Five band-1 random g-fields with ‖g‖∞ = 1.5 on the 128 grid"""
    rng = np.random.default_rng(1234)
    return [RealField(grid128, band_limited_noise(grid128, 1, 1.5, rng)) for _ in range(5)]


@pytest.fixture(scope="function")
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="function")
def small_config():
    """Short ETDRK2 run on a 32 grid, nothing written unless out_dir is given"""
    return RunConfig.model_validate({
        "grid": {"n": 32},
        "scheme": {"kind": "ETDRK2", "dt": 1e-5},
        "ic": {"kind": "random-perturbation", "mean_u": 0.2, "amplitude": 0.05, "band": 1},
        "t_end": 2e-4,
        "record_every": 5,
        "snapshot_every": 10,
    })


@pytest.fixture(scope="function")
def out_dir(tmp_path):
    path = tmp_path / "run"
    path.mkdir()
    return path
