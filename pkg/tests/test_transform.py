"""
Tests for the g ↔ u change of variables and the chain-rule expansions.
"""

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.potential import DomainError
from src.transform import (
    G_MAX,
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
from src.verification import identity_errors

moderate_g = st.floats(min_value=-8.0, max_value=8.0, allow_nan=False, allow_infinity=False)


class TestRoundTrip:
    """Tests for u = tanh g and its inverse"""

    @given(g=moderate_g)
    @settings(max_examples=300, deadline=None)
    def test_g_of_u_inverts_u_of_g(self, g):
        back = float(g_of_u(u_of_g(g)))
        # atanh amplifies the rounding of tanh by cosh²g
        bound = 1e-15 * np.cosh(g) ** 2 + 1e-12 * max(1.0, abs(g))
        assert abs(back - g) <= bound

    def test_round_trip_relative_accuracy_up_to_eight(self):
        g = np.linspace(-8.0, 8.0, 321)
        g = g[np.abs(g) > 0.5]
        back = g_of_u(u_of_g(g))
        assert np.max(np.abs(back - g) / np.abs(g)) <= 1e-9

    def test_fixed_points_and_named_values(self):
        assert u_of_g(0.0) == 0.0
        assert g_of_u(0.0) == 0.0
        assert abs(float(g_of_u(u_of_g(3.7))) - 3.7) <= 1e-12

    @given(u=st.floats(min_value=-0.999999, max_value=0.999999, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_g_of_u_is_odd(self, u):
        assert g_of_u(-u) == pytest.approx(-g_of_u(u), rel=1e-15, abs=1e-300)

    def test_round_trip_near_ten(self):
        assert abs(float(g_of_u(np.tanh(10.0))) - 10.0) <= 1e-7

    @pytest.mark.parametrize("u", [1.0, -1.0, 1.2, float("nan")])
    def test_g_of_u_domain(self, u):
        with pytest.raises(DomainError):
            g_of_u(u)

    def test_u_of_g_saturates_without_overflow(self):
        assert u_of_g(400.0) == 1.0
        assert u_of_g(-400.0) == -1.0


class TestStableHyperbolics:
    """Tests for sech², cosh² and the log helpers"""

    def test_sech2_small_and_large(self):
        assert sech2(0.0) == 1.0
        assert sech2(400.0) > 0.0
        assert sech2(-400.0) == sech2(400.0)

    def test_sech2_matches_naive_form(self):
        g = np.linspace(-5.0, 5.0, 101)
        np.testing.assert_allclose(sech2(g), 1.0 / np.cosh(g) ** 2, rtol=1e-14)

    def test_sech2_times_cosh2_is_one(self):
        g = np.linspace(-G_MAX, G_MAX, 601)
        np.testing.assert_allclose(sech2(g) * cosh2(g), 1.0, rtol=1e-12)

    def test_cosh2_values(self):
        assert cosh2(0.0) == 1.0
        assert cosh2(1.0) == pytest.approx(((np.e + 1 / np.e) / 2) ** 2, rel=1e-14)

    def test_cosh2_guard(self):
        assert np.isfinite(cosh2(G_MAX))
        with pytest.raises(SeparationOverflowError) as info:
            cosh2(np.array([0.0, G_MAX + 1.0]))
        assert info.value.value == G_MAX + 1.0

    def test_cosh2_rejects_nan(self):
        with pytest.raises(SeparationOverflowError):
            cosh2(np.array([float("nan")]))

    def test_lncosh_matches_naive_and_stays_finite(self):
        g = np.linspace(-20.0, 20.0, 81)
        np.testing.assert_allclose(lncosh(g), np.log(np.cosh(g)), rtol=1e-14, atol=1e-15)
        assert lncosh(1000.0) == pytest.approx(1000.0 - np.log(2.0), rel=1e-15)

    def test_log_one_plus_minus_u(self):
        g = np.linspace(-5.0, 5.0, 41)
        u = np.tanh(g)
        np.testing.assert_allclose(log_one_plus_u(g), np.log1p(u), rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(log_one_minus_u(g), np.log1p(-u), rtol=1e-12, atol=1e-14)

    def test_log_one_minus_u_far_into_separation(self):
        # naive 1 − tanh(30) is exactly zero in float64
        assert log_one_minus_u(30.0) == pytest.approx(-60.0 + np.log(2.0), rel=1e-14)


class TestExpansions:
    """Tests for the Δu, Δ∂ᵢu and Δ²u chain-rule expansions"""

    def test_zero_jet_gives_zero(self):
        jet = PointJet.zero()
        assert lap_u_expansion(jet) == 0.0
        assert grad_lap_u_expansion(jet) == (0.0, 0.0)
        assert bilap_u_expansion(jet) == 0.0

    def test_constant_g_gives_zero(self):
        jet = replace(PointJet.zero(), g=3.0)
        assert lap_u_expansion(jet) == 0.0
        assert bilap_u_expansion(jet) == 0.0

    def test_lap_expansion_on_linear_profile(self):
        # g = a·x: Δu = −2a² tanh(g) sech²(g)
        a, x = 1.7, 0.3
        g = a * x
        jet = replace(PointJet.zero(), g=g, grad_g=(a, 0.0))
        expected = -2.0 * a * a * np.tanh(g) / np.cosh(g) ** 2
        assert lap_u_expansion(jet) == pytest.approx(expected, rel=1e-13)

    def test_bilap_expansion_on_linear_profile(self):
        # g = a·x: Δ²u = a⁴(16u − 24u³)sech²g
        a, x = 0.9, -0.4
        g = a * x
        u = np.tanh(g)
        jet = replace(PointJet.zero(), g=g, grad_g=(a, 0.0))
        expected = a**4 * (16.0 * u - 24.0 * u**3) * (1.0 - u * u)
        assert bilap_u_expansion(jet) == pytest.approx(expected, rel=1e-12, abs=1e-15)

    def test_expansions_on_random_fields(self, band_limited_fields):
        for g in band_limited_fields:
            errors = identity_errors(g)
            assert set(errors) == {"grad_u", "lap_u", "lap_grad_u", "bilap_u"}
            assert max(errors.values()) <= 1e-7, errors

    def test_jet_is_finite(self):
        assert PointJet.zero().is_finite()
        assert not replace(PointJet.zero(), lap_g=float("inf")).is_finite()
