"""Shock position, times, fluid values and B along an orbit.

The FRW shock coordinate r is only determined up to its S -> 0 limit r*, so
r is reported in units of r* (r* = 1); the physical scale enters through H0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from frwshock.frw_background import (
    KAPPA,
    FRWBackground,
    background_from_h0,
    state_at,
)
from frwshock.phase_plane import Orbit, entropy_mask, verify_invariant_regions
from frwshock.shock_matching import shock_speed_fluid, v_from_u
from frwshock.tov_interior import HORIZON_EPS, BVariant, metric_log_B

# ln B below this is reported as invalid (exp underflows to subnormals)
LOG_B_FLOOR = math.log(np.finfo(float).tiny)
TAIL_FIT_DECADES = 1.0


def dr_dS(S, u, r, sigma):
    """dr/dS along the shock."""
    S = np.asarray(S, dtype=float)
    if np.any(S <= 0):
        raise ValueError("S must be positive")
    out = (sigma - u) / ((1.0 + sigma) * (1.0 + 3.0 * u)) * r / S
    return out if np.ndim(out) else float(out)


def time_of_density(rho: float, sigma: float) -> float:
    """FRW time at which the background density equals rho."""
    if not rho > 0.0:
        raise ValueError("rho must be positive")
    return math.sqrt(4.0 / (3.0 * KAPPA * (1.0 + sigma) ** 2 * rho))


@dataclass(frozen=True, eq=False)
class RProfile:
    """r(S)/r* on the orbit samples.

    ``log_tail`` estimates ln(r(S_min)/r*), the part of the integral below the
    last sample, from a local power-law fit; ``tail_bound`` is the analytic
    bound on the relative error this introduces in r*. For sigma > 1/3
    r* = 0, and r is reported relative to r(S_min) with an infinite bound.
    """

    S: np.ndarray
    r_over_rstar: np.ndarray
    log_r_over_rstar: np.ndarray
    log_tail: float
    tail_bound: float
    bound_defects: tuple[int, ...] = ()


def _tail_estimate(S: np.ndarray, g: np.ndarray) -> float:
    """Integral of g dS/S over (0, S_min) assuming g ~ c S^beta near S_min."""
    S_min = S[-1]
    sel = (S <= S_min * 10.0**TAIL_FIT_DECADES) & (g > 0)
    if sel.sum() >= 3:
        beta, logc = np.polyfit(np.log(S[sel]), np.log(g[sel]), 1)
        if beta > 1e-3:
            return float(math.exp(logc) * S_min**beta / beta)
    return float("nan")


def integrate_r(orbit: Orbit, slack: float = 1e-9) -> RProfile:
    """Normalize the orbit's ln r by its S -> 0 limit.

    Integrand samples exceeding sqrt(3 sigma S) (beyond ``slack``) are
    returned as ``bound_defects``; they mean the orbit is wrong.
    """
    sigma = orbit.sigma
    S, u, w = orbit.S, orbit.u, orbit.w
    g = w / ((1.0 + sigma) * (1.0 + 3.0 * u))
    tail_bound = math.expm1(2.0 * math.sqrt(3.0 * sigma * S[-1]) / (1.0 + sigma))
    defects: tuple[int, ...] = ()
    if orbit.exploratory:
        # sigma > 1/3: sigma - u tends to a positive constant, the integral
        # diverges logarithmically and r* = 0; normalize by r(S_min) instead
        log_tail, tail_bound = 0.0, math.inf
    else:
        bound = np.sqrt(3.0 * sigma * S)
        bad = np.nonzero(w / (1.0 + 3.0 * u) > bound * (1.0 + slack) + slack)[0]
        defects = tuple(int(i) for i in bad)
        log_tail = _tail_estimate(S, g)
        if not math.isfinite(log_tail):
            log_tail = 0.5 * math.log1p(tail_bound)
    log_r = (orbit.log_r - orbit.log_r[-1]) + log_tail
    return RProfile(S=S, r_over_rstar=np.exp(log_r), log_r_over_rstar=log_r, log_tail=log_tail,
                    tail_bound=tail_bound, bound_defects=defects)


@dataclass(frozen=True)
class ShockSolutionRow:
    S: float
    N: float
    u: float
    v: float
    rbar: float
    r: float
    t: float
    rho: float
    p: float
    pbar: float
    rhobar: float
    s: float
    B: float
    B_valid: bool
    entropy_ok: bool
    invariant_ok: Optional[bool]


ROW_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(ShockSolutionRow))


@dataclass(frozen=True, eq=False)
class ShockSolution:
    """Rows ordered by increasing t, i.e. from the Big Bang side (large N) to N = 1."""

    sigma: float
    H0: float
    rows: tuple[ShockSolutionRow, ...]
    r_star: float
    r_star_error: float
    b_variant: str
    orbit: Orbit
    profile: RProfile

    @property
    def background(self) -> FRWBackground:
        return background_from_h0(self.sigma, self.H0)

    def column(self, name: str) -> np.ndarray:
        if name not in ROW_FIELDS:
            raise KeyError(name)
        return np.array([getattr(row, name) for row in self.rows], dtype=float)

    def R(self) -> np.ndarray:
        t = self.column("t")
        return (t / self.background.t0) ** (2.0 / (3.0 * (1.0 + self.sigma)))

    def H(self) -> np.ndarray:
        return self.background.H0 * self.background.t0 / self.column("t")


def assemble(orbit: Orbit, H0: float, b_variant: BVariant = "dimensional",
             horizon_eps: float = HORIZON_EPS) -> ShockSolution:
    """Build the shock spacetime along ``orbit`` for a background with Hubble constant H0.

    B is normalized to 1 at the row nearest the horizon with N > 1 + horizon_eps
    and integrated toward larger N; rows at the horizon or where B underflows
    carry ``B_valid = False``.
    """
    if not H0 > 0.0:
        raise ValueError("H0 must be positive")
    if orbit.violations:
        raise ValueError(f"orbit is not certified: {orbit.violations[0]}")
    sigma = orbit.sigma
    bg = background_from_h0(sigma, H0)
    profile = integrate_r(orbit)
    if profile.bound_defects:
        i = profile.bound_defects[0]
        raise ValueError(f"r-integrand exceeds sqrt(3 sigma S) at S={orbit.S[i]:.3e}")

    S = orbit.S
    u = orbit.u
    r = profile.r_over_rstar
    N = 1.0 / S
    R = (S * H0**2 * r**2) ** (1.0 / (1.0 + 3.0 * sigma))
    t = bg.t0 * R ** (1.5 * (1.0 + sigma))

    ent = entropy_mask(orbit)
    if orbit.exploratory:
        inv = [None] * len(S)
    else:
        rep = verify_invariant_regions(orbit)
        inv = [bool(x) for x in rep.in_R & rep.in_Q]

    states = [state_at(bg, float(ti)) for ti in t]
    rbar = np.sqrt(N) / np.array([st.H for st in states])
    rho = np.array([st.rho for st in states])
    v = np.array([v_from_u(float(ui), sigma, float(Ni)) for ui, Ni in zip(u, N)])

    log_B = np.full(len(S), -np.inf)
    valid = N > 1.0 + horizon_eps
    if valid.any():
        idx = np.nonzero(valid)[0]  # orbit order: N increasing
        samples = np.column_stack([N[idx], rbar[idx], v[idx] * rho[idx]])
        log_B[idx] = metric_log_B(samples, variant=b_variant, horizon_eps=horizon_eps)
    B_valid = np.isfinite(log_B) & (log_B > LOG_B_FLOOR)
    B = np.where(B_valid, np.exp(np.where(B_valid, log_B, 0.0)), np.nan)

    rows = []
    for i in range(len(S) - 1, -1, -1):
        rows.append(ShockSolutionRow(
            S=float(S[i]), N=float(N[i]), u=float(u[i]), v=float(v[i]),
            rbar=float(rbar[i]), r=float(r[i]), t=float(t[i]), rho=float(rho[i]),
            p=sigma * float(rho[i]), pbar=float(u[i] * rho[i]), rhobar=float(v[i] * rho[i]),
            s=shock_speed_fluid(float(u[i]), sigma, float(N[i])),
            B=float(B[i]), B_valid=bool(B_valid[i]),
            entropy_ok=bool(ent[i]), invariant_ok=inv[i],
        ))
    return ShockSolution(
        sigma=sigma, H0=H0, rows=tuple(rows), r_star=1.0,
        r_star_error=profile.tail_bound, b_variant=b_variant,
        orbit=orbit, profile=profile,
    )


def finite_difference_speed(solution: ShockSolution) -> np.ndarray:
    """R dr/dt from centered differences of the (t, r) rows, taken in ln S.

    Differences are taken of ln(r/r*) and ln t: near the Big Bang r is
    within ~1e-12 of r*, and differencing r itself would cancel away the
    speed. End rows use one-sided second-order differences.
    """
    tau = np.log(solution.column("S"))
    log_r = solution.profile.log_r_over_rstar[::-1]
    t = solution.column("t")
    dlr = np.gradient(log_r, tau, edge_order=2)
    dlt = np.gradient(np.log(t), tau, edge_order=2)
    return solution.R() * solution.column("r") * dlr / (t * dlt)
