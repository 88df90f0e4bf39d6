import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frwshock.frw_background import (
    KAPPA,
    background_from_h0,
    characteristic_speed,
    density_at,
    friedmann_residuals,
    frw_schwarzschild_A,
    infinite_redshift_radius,
    light_ray_drift,
    mass_decay_exponent,
    mass_inside,
    state_at,
)

sigmas = st.floats(0.0, 1.0)
h0s = st.floats(1e-3, 1e3)


def test_kappa():
    assert KAPPA == 8 * math.pi


@pytest.mark.parametrize("sigma,t0", [(0.0, 2 / 3), (1 / 3, 0.5), (1.0, 1 / 3)])
def test_age(sigma, t0):
    assert background_from_h0(sigma, 1.0).t0 == pytest.approx(t0, rel=1e-15)


@pytest.mark.parametrize("sigma,H0", [(-0.1, 1.0), (1.5, 1.0), (0.2, 0.0), (0.2, -1.0)])
def test_background_rejects(sigma, H0):
    with pytest.raises(ValueError):
        background_from_h0(sigma, H0)


@given(sigmas, h0s)
def test_background_invariants(sigma, H0):
    bg = background_from_h0(sigma, H0)
    assert bg.t0 == pytest.approx(2 / (3 * (1 + sigma) * H0), rel=1e-14)
    assert KAPPA / 3 * bg.rho0 == pytest.approx(H0**2, rel=1e-13)


def test_state_examples():
    bg = background_from_h0(1 / 3, 1.0)
    st0 = state_at(bg, bg.t0)
    assert st0.R == 1.0 and st0.H == pytest.approx(1.0, rel=1e-15)
    assert state_at(bg, bg.t0 / 4).H == pytest.approx(4.0, rel=1e-14)
    assert state_at(bg, 1.0).rho == pytest.approx(3 / (32 * math.pi), rel=1e-14)
    with pytest.raises(ValueError):
        state_at(bg, 0.0)


@given(sigmas, h0s, st.floats(-3, 3), st.floats(1e-3, 1.0))
def test_state_invariants(sigma, H0, logt, dlog):
    bg = background_from_h0(sigma, H0)
    t = bg.t0 * 10**logt
    a, b = state_at(bg, t), state_at(bg, t * (1 + dlog))
    assert a.p == sigma * a.rho
    assert a.H**2 == pytest.approx(KAPPA / 3 * a.rho, rel=1e-12)
    assert b.R > a.R and b.rho < a.rho


def test_friedmann_residuals_six_decades():
    for sigma in (0.0, 0.2, 1 / 3, 1.0):
        bg = background_from_h0(sigma, 0.7)
        for t in np.logspace(-3, 3, 25) * bg.t0:
            f, c = friedmann_residuals(bg, float(t))
            assert abs(f) < 1e-10 and abs(c) < 1e-10


def test_mass_inside_examples():
    st0 = state_at(background_from_h0(0.1, 1.0), 1.0)
    assert mass_inside(st0, 0.0) == 0.0
    rbar = 1 / st0.H
    assert 2 * mass_inside(st0, rbar) / rbar == pytest.approx(1.0, rel=1e-14)


@given(sigmas, st.floats(1e-3, 1e3))
def test_mass_hubble_identity(sigma, rbar):
    st0 = state_at(background_from_h0(sigma, 1.0), 2.0)
    assert 2 * mass_inside(st0, rbar) / rbar == pytest.approx((st0.H * rbar) ** 2, rel=1e-13)


@pytest.mark.parametrize("sigma,q", [(0.0, 0.0), (1 / 3, -0.5), (1.0, -1.0)])
def test_mass_decay_exponent(sigma, q):
    assert mass_decay_exponent(sigma) == pytest.approx(q, abs=1e-15)


@pytest.mark.parametrize("sigma", [0.0, 0.1, 1 / 3, 0.7, 1.0])
def test_comoving_mass_loglog_slope(sigma):
    bg = background_from_h0(sigma, 1.0)
    ts = np.logspace(-3, 3, 40)
    M = [mass_inside(s, s.R * 0.3) for s in (state_at(bg, float(t)) for t in ts)]
    slope = np.polyfit(np.log(ts), np.log(M), 1)[0]
    assert abs(slope - mass_decay_exponent(sigma)) < 1e-6


@pytest.mark.parametrize("sigma,expected", [(1 / 3, 1.0), (0.0, 2.0), (1.0, 0.5)])
def test_infinite_redshift_radius(sigma, expected):
    assert infinite_redshift_radius(background_from_h0(sigma, 1.0)) == pytest.approx(expected, rel=1e-15)


@given(sigmas, h0s)
def test_infinite_redshift_radius_range(sigma, H0):
    r = infinite_redshift_radius(background_from_h0(sigma, H0)) * H0
    assert 0.5 - 1e-15 <= r <= 2.0 + 1e-15


def _state_with_H(H):
    bg = background_from_h0(0.2, 1.0)
    return state_at(bg, bg.t0 / H)


def test_schwarzschild_A_examples():
    s = _state_with_H(1.0)
    assert frw_schwarzschild_A(s, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert frw_schwarzschild_A(s, 0.0) == 1.0
    assert frw_schwarzschild_A(s, 2.0) == pytest.approx(-3.0, rel=1e-14)


def test_characteristic_speed_examples():
    s = _state_with_H(1.0)
    assert characteristic_speed(s, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert characteristic_speed(s, 2.0) == pytest.approx(1.5, rel=1e-14)
    assert characteristic_speed(s, 0.5) == pytest.approx(-1.5, rel=1e-14)
    with pytest.raises(ValueError):
        characteristic_speed(s, 0.0)


def test_light_ray_drift_examples():
    s = _state_with_H(1.0)
    assert light_ray_drift(s, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert light_ray_drift(s, 2.0) == pytest.approx(1.0, rel=1e-14)
    assert light_ray_drift(s, 0.5) == pytest.approx(-0.5, rel=1e-14)


@given(st.floats(1e-3, 1e3))
def test_light_ray_outgoing_beyond_hubble_length(x):
    s = _state_with_H(1.3)
    rbar = x / s.H
    assert (light_ray_drift(s, rbar) > 0) == (x > 1)
    assert density_at(0.2, s.t) == s.rho
