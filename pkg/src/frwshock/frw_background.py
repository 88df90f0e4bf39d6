"""Closed-form k=0 FRW solutions for p = sigma*rho.

R is normalized so R(t0) = 1 and the Hubble constant H0 at t0 fixes the only
physical scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

KAPPA = 8.0 * math.pi


@dataclass(frozen=True)
class FRWBackground:
    sigma: float
    H0: float
    t0: float
    rho0: float


@dataclass(frozen=True)
class FRWState:
    """FRW fields at a single time ``t`` of a given background."""

    t: float
    R: float
    H: float
    rho: float
    p: float
    sigma: float


def _check_sigma(sigma: float) -> None:
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma!r}")


def age(sigma: float, H0: float) -> float:
    """Present time t0 = 2 / (3 (1+sigma) H0)."""
    return 2.0 / (3.0 * (1.0 + sigma) * H0)


def density_at(sigma: float, t: float) -> float:
    return 4.0 / (3.0 * KAPPA * (1.0 + sigma) ** 2 * t * t)


def background_from_h0(sigma: float, H0: float) -> FRWBackground:
    _check_sigma(sigma)
    if not H0 > 0.0:
        raise ValueError(f"H0 must be positive, got {H0!r}")
    t0 = age(sigma, H0)
    return FRWBackground(sigma=sigma, H0=H0, t0=t0, rho0=density_at(sigma, t0))


def state_at(bg: FRWBackground, t: float) -> FRWState:
    if not t > 0.0:
        raise ValueError(f"t must be positive (t=0 is the Big Bang), got {t!r}")
    rho = density_at(bg.sigma, t)
    return FRWState(
        t=t,
        R=(t / bg.t0) ** (2.0 / (3.0 * (1.0 + bg.sigma))),
        H=bg.H0 * bg.t0 / t,
        rho=rho,
        p=bg.sigma * rho,
        sigma=bg.sigma,
    )


def mass_inside(state: FRWState, rbar: float) -> float:
    """Total mass inside areal radius ``rbar``: M = (kappa/6) rho rbar^3."""
    if rbar < 0.0:
        raise ValueError("rbar must be non-negative")
    return KAPPA / 6.0 * state.rho * rbar**3


def mass_decay_exponent(sigma: float) -> float:
    """Exponent q in M ~ t^q inside a comoving ball."""
    _check_sigma(sigma)
    return -2.0 * sigma / (1.0 + sigma)


def infinite_redshift_radius(bg: FRWBackground) -> float:
    return 2.0 / ((1.0 + 3.0 * bg.sigma) * bg.H0)


def frw_schwarzschild_A(state: FRWState, rbar: float) -> float:
    return 1.0 - (state.H * rbar) ** 2


def characteristic_speed(state: FRWState, rbar: float) -> float:
    """drbar/dt along characteristics of the integrating-factor equation."""
    if state.H == 0.0 or rbar == 0.0:
        raise ValueError("characteristic speed is singular at H = 0 or rbar = 0")
    x = state.H * rbar
    return (x * x - 1.0) / x


def light_ray_drift(state: FRWState, rbar: float) -> float:
    """drbar/dt of an incoming radial light ray; positive beyond one Hubble length."""
    return state.H * rbar - 1.0


def _dlog_dlogt(f, t: float, h: float) -> float:
    """d ln f / d ln t by a five-point stencil in ln t."""
    g = [math.log(f(t * math.exp(k * h))) for k in (-2, -1, 1, 2)]
    return (g[0] - 8.0 * g[1] + 8.0 * g[2] - g[3]) / (12.0 * h)


def friedmann_residuals(bg: FRWBackground, t: float, h: float = 1e-3) -> tuple[float, float]:
    """Relative residuals of H^2 = kappa rho/3 and rho' = -3 H (rho + p).

    Rdot/R and rho' are taken by differencing R(t) and rho(t), so the check
    does not reuse the closed-form H.
    """
    st = state_at(bg, t)
    H = _dlog_dlogt(lambda x: state_at(bg, x).R, t, h) / t
    rho_dot = _dlog_dlogt(lambda x: density_at(bg.sigma, x), t, h) * st.rho / t
    friedmann = (H * H - KAPPA * st.rho / 3.0) / (H * H)
    continuity = (rho_dot + 3.0 * H * (st.rho + st.p)) / (3.0 * H * st.rho)
    return friedmann, continuity
