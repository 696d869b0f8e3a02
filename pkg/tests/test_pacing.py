"""Inverse-dome timeout curve: frozen values, shape, and degenerate limits."""

import math

import pytest

from drillkit.pacing import UNLIMITED, TimeoutPolicy, timeout_seconds

POLICY = TimeoutPolicy(t_min=15, t_max=180, g_min=6, width=2)
GRID = [i / 10 for i in range(0, 101)]


class TestCurve:
    def test_disabled_is_unlimited(self):
        policy = TimeoutPolicy.disabled()
        for g in (0.0, 3.3, 6.0, 10.0):
            assert timeout_seconds(g, policy) == UNLIMITED
        assert 1e9 < UNLIMITED

    def test_constant_when_tmin_equals_tmax(self):
        policy = TimeoutPolicy(t_min=60, t_max=60, g_min=5, width=1)
        for g in GRID:
            assert timeout_seconds(g, policy) == 60.0

    def test_minimum_value_at_gmin(self):
        assert timeout_seconds(6.0, POLICY) == 15.0

    def test_frozen_value_at_grade_zero(self):
        # 180 - 165 * exp(-4.5), evaluated independently beforehand
        assert timeout_seconds(0.0, POLICY) == pytest.approx(178.16701557119, abs=1e-9)
        assert timeout_seconds(0.0, POLICY) == pytest.approx(178.17, abs=5e-3)

    def test_bounds(self):
        for g in GRID:
            t = timeout_seconds(g, POLICY)
            assert POLICY.t_min <= t <= POLICY.t_max

    def test_unique_minimum_at_gmin(self):
        at_min = timeout_seconds(POLICY.g_min, POLICY)
        for g in GRID:
            if g != POLICY.g_min:
                assert timeout_seconds(g, POLICY) > at_min

    def test_symmetry_around_gmin(self):
        for d in [i / 100 for i in range(0, 401)]:
            lo = timeout_seconds(POLICY.g_min - d, POLICY)
            hi = timeout_seconds(POLICY.g_min + d, POLICY)
            assert abs(lo - hi) < 1e-9

    def test_monotone_away_from_gmin(self):
        above = [timeout_seconds(g, POLICY) for g in GRID if g >= POLICY.g_min]
        below = [timeout_seconds(g, POLICY) for g in GRID if g <= POLICY.g_min]
        assert all(b >= a for a, b in zip(above, above[1:]))
        assert all(a >= b for a, b in zip(below, below[1:]))

    def test_wide_dip_flattens_to_tmin(self):
        # width -> infinity sends the exponent to 0, so the dip covers every
        # grade and the curve approaches the constant t_min
        policy = TimeoutPolicy(t_min=15, t_max=180, g_min=6, width=1e6)
        for g in GRID:
            assert abs(timeout_seconds(g, policy) - policy.t_min) < 1e-6

    def test_narrow_dip_flattens_to_tmax(self):
        policy = TimeoutPolicy(t_min=15, t_max=180, g_min=6, width=1e-6)
        for g in GRID:
            if abs(g - policy.g_min) > 0.01:
                assert abs(timeout_seconds(g, policy) - policy.t_max) < 1e-9


class TestValidation:
    def test_policy_invariants(self):
        with pytest.raises(ValueError):
            TimeoutPolicy(t_min=0)
        with pytest.raises(ValueError):
            TimeoutPolicy(t_min=100, t_max=50)
        with pytest.raises(ValueError):
            TimeoutPolicy(width=0)
        with pytest.raises(ValueError):
            TimeoutPolicy(g_min=11)

    def test_unlimited_is_inf(self):
        assert math.isinf(UNLIMITED)
