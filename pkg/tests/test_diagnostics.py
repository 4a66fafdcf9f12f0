"""
Tests for the energy, mass, separation and chemical-potential monitors.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.diagnostics import (
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
from src.diagnostics.monitors import ENERGY_TOLERANCE
from src.potential import PotentialParams, free_energy_F
from src.spectral import RealField
from src.timestepper import State
from src.transform import SeparationOverflowError


def make_record(t, energy_value, dissipation=None, **overrides):
    values = dict(t=t, mass_u=0.0, energy=energy_value, max_abs_u=0.5, max_abs_g=math.atanh(0.5),
                  grad_K_L2=1.0, g_mean=0.0, K_mean=0.0, g_fluct_L2=1.0, dissipation_check=dissipation)
    values.update(overrides)
    return DiagnosticsRecord(**values)


class TestEnergyDensity:
    """Tests for F evaluated through g"""

    @given(g=st.floats(min_value=-15.0, max_value=15.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_matches_F_of_tanh(self, g):
        p = PotentialParams()
        u = math.tanh(g)
        if abs(u) < 1.0 - 1e-12:
            assert free_energy_density_g(g, p) == pytest.approx(float(free_energy_F(u, p)), abs=1e-9)

    def test_finite_far_into_separation(self, params):
        # F(±1) = θ ln 2 − θ_c/2
        limit = params.theta * math.log(2.0) - params.theta_c / 2
        assert free_energy_density_g(250.0, params) == pytest.approx(limit, abs=1e-12)


class TestMonitors:
    """Tests for the field-level monitors"""

    def test_constant_field(self, grid32, params):
        c = 0.8
        g = RealField(grid32, np.full((32, 32), c))
        assert mass(g) == pytest.approx(math.tanh(c), rel=1e-15)
        assert energy(g, params) == pytest.approx(float(free_energy_F(math.tanh(c), params)), rel=1e-12)
        assert grad_K_norm(g, params) <= 1e-12

    def test_energy_of_single_mode(self, grid128, params):
        # small amplitude: ψ ≈ ½(ν|k|² + F″(0)) mean(g²)
        eps = 1e-3
        X, _ = grid128.mesh()
        g = RealField(grid128, eps * np.cos(2 * np.pi * X))
        expected = 0.5 * (params.nu * 4 * np.pi**2 + params.theta - params.theta_c) * eps**2 / 2
        assert energy(g, params) == pytest.approx(expected, rel=1e-5)

    def test_grad_K_linearization(self, grid128, params):
        eps = 1e-4
        X, _ = grid128.mesh()
        g = RealField(grid128, eps * np.cos(2 * np.pi * X))
        k2 = 4 * np.pi**2
        expected = abs(params.nu * k2 - params.theta_c + params.theta) * eps * 2 * np.pi / math.sqrt(2)
        assert grad_K_norm(g, params) == pytest.approx(expected, rel=1e-6)

    def test_energy_guard(self, grid32, params):
        values = np.zeros((32, 32))
        values[1, 1] = 400.0
        with pytest.raises(SeparationOverflowError):
            energy(RealField(grid32, values), params)

    def test_separation(self, grid32):
        values = np.zeros((32, 32))
        values[2, 3] = -25.0
        max_abs_u, max_abs_g = separation(RealField(grid32, values))
        assert max_abs_g == 25.0
        assert max_abs_u == math.tanh(25.0)
        assert separation_gap(25.0) == pytest.approx(2 * math.exp(-50.0), rel=1e-12)
        assert separation_gap(0.0) == 1.0

    def test_separation_gap_resolves_what_tanh_cannot(self):
        assert math.tanh(20.0) == 1.0
        assert separation_gap(20.0) > 0.0

    def test_record_fields(self, band_limited_fields, params):
        g = band_limited_fields[0]
        rec = record(State(g, t=0.5, step=7), prev_energy=None, p=params)
        assert rec.t == 0.5
        assert rec.dissipation_check is None
        assert rec.max_abs_g == pytest.approx(1.5, rel=1e-14)
        assert rec.max_abs_u == pytest.approx(math.tanh(1.5), rel=1e-14)
        assert rec.g_mean == pytest.approx(g.mean())
        later = record(State(g, t=0.6, step=8), prev_energy=rec.energy + 1.0, p=params)
        assert later.dissipation_check == pytest.approx(-1.0)

    def test_columns(self):
        assert DiagnosticsRecord.columns() == [
            "t", "mass_u", "energy", "max_abs_u", "max_abs_g", "grad_K_L2",
            "g_mean", "K_mean", "g_fluct_L2", "dissipation_check",
        ]
        assert make_record(0.0, 1.0).as_dict()["energy"] == 1.0

    def test_proof_monitors(self, band_limited_fields, params):
        for g in band_limited_fields:
            values = proof_monitors(g, params)
            assert set(values) == {"K_sup", "g_H2", "coercivity_gap"}
            assert values["coercivity_gap"] >= 0.0
            assert values["g_H2"] > 0.0


class TestRunMonitor:
    """Tests for the soft gates"""

    def test_energy_increase_flagged(self):
        monitor = RunMonitor()
        monitor.observe(make_record(0.0, 1.0))
        monitor.observe(make_record(0.1, 1.0 + 1e-6, dissipation=1e-6))
        assert not monitor.energy_ok
        assert monitor.violations[0].startswith("energy increased")

    def test_roundoff_increase_tolerated(self):
        monitor = RunMonitor()
        monitor.observe(make_record(0.0, 1.0))
        monitor.observe(make_record(0.1, 1.0, dissipation=0.5 * ENERGY_TOLERANCE))
        assert monitor.energy_ok
        assert monitor.finish() == []

    def test_separation_floor_tracks_minimum(self):
        monitor = RunMonitor()
        for t, g_max in [(0.0, 1.0), (0.1, 3.0), (0.2, 2.0)]:
            monitor.observe(make_record(t, 1.0, None, max_abs_g=g_max))
        assert monitor.separation_floor == pytest.approx(separation_gap(3.0))

    def test_bounded_monitor_growth_flagged(self):
        monitor = RunMonitor()
        for i in range(20):
            grad = 1.0 if i < 10 else 50.0
            monitor.observe(make_record(0.1 * i, 1.0, None, grad_K_L2=grad))
        warnings = monitor.finish()
        assert len(warnings) == 1
        assert warnings[0].startswith("grad_K_L2")
