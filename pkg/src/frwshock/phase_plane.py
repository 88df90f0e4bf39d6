"""The scalar shock equation in the (S, u) plane, S = 1/N and u = pbar/rho.

The orbit starts at the regular point (S, u) = (1, 0) and runs backward to
the degenerate rest point (0, min(sigma, 1/3)) at the Big Bang.

Integration uses tau = ln S and the state w = sigma - u. Near the rest point
w -> 0 (for sigma <= 1/3), so carrying it directly keeps full relative
precision where u itself would cancel against sigma. In tau the orbit is
attracting with rate ~1/S, so an implicit scheme (Radau IIA, 5th order,
embedded error estimate) is used.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

SIGMA_MIN = 1e-4
THIRD = 1.0 / 3.0
M_STAR = 4.0 / 3.0
DEFAULT_S_MIN = 1e-9
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
POINTS_PER_DECADE = 20
SANDWICH_SLACK = 1e-9
# tolerance on sigma == 1/3 for the radiation-specific operations
RADIATION_TOL = 1e-6


def u_bar(sigma: float) -> float:
    return min(sigma, THIRD)


def is_radiation(sigma: float) -> bool:
    return abs(sigma - THIRD) <= RADIATION_TOL


# -- field and curves --------------------------------------------------------

def du_dS(S, u, sigma):
    """du/dS along solutions of the shock equation."""
    den = (sigma - u) + (1.0 + u) * S
    if np.any(np.asarray(den) == 0.0):
        raise ValueError("vanishing denominator (sigma - u) + (1 + u) S")
    return ((1.0 + u) / (2.0 * (1.0 + 3.0 * u) * S)) * (
        ((3.0 * u - 1.0) * (sigma - u) + 6.0 * u * (1.0 + u) * S) / den
    )


def autonomous_field(S, u, sigma):
    """(F, G) = (dS/dxi, du/dxi) of the equivalent autonomous system."""
    F = 2.0 * S * (1.0 + 3.0 * u) * ((sigma - u) + (1.0 + u) * S)
    G = (1.0 + u) * (-(1.0 - 3.0 * u) * (sigma - u) + 6.0 * u * (1.0 + u) * S)
    return F, G


def isocline_h(u, sigma):
    """The G = 0 isocline S = h(u)."""
    u = np.asarray(u, dtype=float)
    if np.any(u == 0.0):
        raise ValueError("h(u) diverges at u = 0")
    out = (sigma - u) * (THIRD - u) / (2.0 * u * (1.0 + u))
    return out if out.ndim else float(out)


def entropy_boundary_E(u, sigma):
    """Entropy region is S < E(u); it implies 0 < pbar < p, 0 < rhobar < rho, pbar < rhobar."""
    return ((1.0 - u) / (1.0 + u)) * ((sigma - u) / (sigma + u))


def invariant_Q(u, sigma, a):
    return a * a * (sigma - u) ** 2 / (1.0 + u) ** 2


def _dQ_du(u, sigma, a):
    return -2.0 * a * a * (1.0 + sigma) * (sigma - u) / (1.0 + u) ** 3


# -- orbit integration -------------------------------------------------------

def _rhs(tau, y, sigma):
    w = y[0]
    S = math.exp(tau)
    u = sigma - w
    a = (1.0 + u) / (2.0 * (1.0 + 3.0 * u))
    P = (3.0 * u - 1.0) * w + 6.0 * u * (1.0 + u) * S
    D = w + (1.0 + u) * S
    return [-a * P / D, w / ((1.0 + sigma) * (1.0 + 3.0 * u))]


def _jac(tau, y, sigma):
    w = y[0]
    S = math.exp(tau)
    u = sigma - w
    a = (1.0 + u) / (2.0 * (1.0 + 3.0 * u))
    da_dw = 1.0 / (1.0 + 3.0 * u) ** 2  # du/dw = -1
    P = (3.0 * u - 1.0) * w + 6.0 * u * (1.0 + u) * S
    dP_dw = (3.0 * u - 1.0 - 3.0 * w) - 6.0 * S * (1.0 + 2.0 * u)
    D = w + (1.0 + u) * S
    dD_dw = 1.0 - S
    dg = da_dw * P / D + a * (dP_dw * D - P * dD_dw) / (D * D)
    dL = (1.0 + 3.0 * u + 3.0 * w) / ((1.0 + sigma) * (1.0 + 3.0 * u) ** 2)
    return np.array([[-dg, 0.0], [dL, 0.0]])


@dataclass(frozen=True)
class PhasePoint:
    S: float
    u: float


@dataclass(frozen=True, eq=False)
class Orbit:
    """Samples of u_sigma(S) from S = 1 down to S_min.

    ``w`` holds sigma - u to full relative precision. ``log_r`` is
    ln(r(S)/r(1)) for the FRW shock coordinate r, integrated alongside u.
    """

    sigma: float
    S: np.ndarray
    u: np.ndarray
    w: np.ndarray
    log_r: np.ndarray
    rel_tol: float
    abs_tol: float
    exploratory: bool = False
    halted_at: Optional[float] = None
    violations: tuple[str, ...] = ()
    _dense: object = field(default=None, repr=False)

    @classmethod
    def from_samples(cls, sigma: float, S: Sequence[float], u: Sequence[float],
                     log_r: Optional[Sequence[float]] = None) -> "Orbit":
        """Wrap externally produced samples (no integration, no dense output)."""
        S = np.asarray(S, dtype=float)
        u = np.asarray(u, dtype=float)
        lr = np.zeros_like(S) if log_r is None else np.asarray(log_r, dtype=float)
        return cls(sigma=sigma, S=S, u=u, w=sigma - u, log_r=lr,
                   rel_tol=0.0, abs_tol=0.0, exploratory=sigma > THIRD + RADIATION_TOL)

    @property
    def S_min(self) -> float:
        return float(self.S[-1])

    @property
    def certified(self) -> bool:
        return not self.exploratory and not self.violations

    def points(self) -> list[PhasePoint]:
        return [PhasePoint(float(s), float(u)) for s, u in zip(self.S, self.u)]

    def _eval(self, S):
        if self._dense is None:
            raise ValueError("orbit has no dense output")
        S = np.asarray(S, dtype=float)
        if np.any(S > 1.0) or np.any(S < self.S_min * (1 - 1e-12)):
            if self.halted_at is None or np.any(S > 1.0):
                raise ValueError("S outside the integrated range")
        return self._dense(np.log(np.clip(S, self.S_min, 1.0)))

    def w_at(self, S):
        S = np.asarray(S, dtype=float)
        w = self._eval(S)[0]
        if self.halted_at is not None and is_radiation(self.sigma):
            deep = S < self.S_min
            w = np.where(deep, M_STAR * np.sqrt(S), w)
        return w

    def u_at(self, S):
        return self.sigma - self.w_at(S)

    def log_r_at(self, S):
        return self._eval(S)[1]


def integrate_orbit(
    sigma: float,
    S_min: float = DEFAULT_S_MIN,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    points_per_decade: int = POINTS_PER_DECADE,
) -> Orbit:
    """Integrate the entropy-selected orbit from (1, 0) back to S_min.

    For sigma <= 1/3 the samples are certified against the entropy region and
    the invariant-region sandwich; violations are reported in
    ``Orbit.violations`` (and warned), never clamped. sigma > 1/3 runs in
    exploratory mode with certification off.
    """
    if not SIGMA_MIN <= sigma < 1.0:
        raise ValueError(f"sigma must lie in [{SIGMA_MIN}, 1) for orbit integration, got {sigma!r}")
    if not 0.0 < S_min < 1.0:
        raise ValueError("S_min must lie in (0, 1)")
    exploratory = sigma > THIRD + RADIATION_TOL

    tau_end = math.log(S_min)
    decades = -math.log10(S_min)
    n = max(int(math.ceil(points_per_decade * decades)) + 1, 2)
    taus = np.linspace(0.0, tau_end, n)

    floor = 1e3 * np.finfo(float).eps

    def cancellation(tau, y, sigma):
        S = math.exp(tau)
        return y[0] + (1.0 + sigma - y[0]) * S - floor * (sigma + S)

    cancellation.terminal = True
    cancellation.direction = -1

    sol = solve_ivp(
        _rhs, (0.0, tau_end), [sigma, 0.0], method="Radau", t_eval=taus,
        dense_output=True, events=cancellation, args=(sigma,), jac=_jac,
        rtol=rel_tol, atol=[1e-30, abs_tol],
    )
    if sol.status == -1:
        raise RuntimeError(f"orbit integration failed for sigma={sigma}: {sol.message}")
    halted_at = None
    if sol.status == 1:
        halted_at = math.exp(sol.t_events[0][0])
        warnings.warn(
            f"orbit halted at S={halted_at:.3e} (cancellation floor); "
            "smaller S uses the leading-order asymptotic form"
        )

    S = np.exp(sol.t)
    S[0] = 1.0
    w = sol.y[0].copy()
    u = sigma - w
    orbit = Orbit(
        sigma=sigma, S=S, u=u, w=w, log_r=sol.y[1].copy(),
        rel_tol=rel_tol, abs_tol=abs_tol, exploratory=exploratory,
        halted_at=halted_at, _dense=sol.sol,
    )
    for arr in (orbit.S, orbit.u, orbit.w, orbit.log_r):
        arr.setflags(write=False)
    if exploratory:
        return orbit
    problems = certify(orbit)
    if problems:
        warnings.warn(f"orbit for sigma={sigma} failed certification: {problems[0]}")
        object.__setattr__(orbit, "violations", tuple(problems))
    return orbit


# -- certification -------------------------------------------------------------

def entropy_mask(orbit: Orbit) -> np.ndarray:
    """S < E(u) per sample; the S = 1 endpoint satisfies it with equality."""
    E = entropy_boundary_E(orbit.u, orbit.sigma)
    ok = orbit.S < E
    ok[orbit.S == 1.0] = np.isclose(E[orbit.S == 1.0], 1.0, rtol=0, atol=1e-15)
    return ok


@dataclass(frozen=True)
class InvariantReport:
    in_R: np.ndarray
    in_Q: np.ndarray
    a2: float
    flux_ok: bool
    flux_u: np.ndarray
    flux_margin: np.ndarray

    @property
    def all_ok(self) -> bool:
        return bool(self.in_R.all() and self.in_Q.all() and self.flux_ok)


def _upper_bound(u, sigma):
    u = np.asarray(u, dtype=float)
    h = np.full_like(u, np.inf)
    pos = u > 0
    h[pos] = isocline_h(u[pos], sigma)
    return np.minimum(1.0, h)


def verify_invariant_regions(orbit: Orbit, a2: Optional[float] = None,
                             slack: float = SANDWICH_SLACK, n_flux: int = 400) -> InvariantReport:
    """Sandwich Q_a(u) <= S <= min(1, h(u)) per sample, plus a boundary-flux check.

    The flux check samples the curve S = Q_a(u) inside R_sigma and tests
    |Q_a'(u)| >= |dS/du|, i.e. the field points below the curve.
    """
    sigma = orbit.sigma
    if sigma > THIRD + RADIATION_TOL:
        raise ValueError("invariant regions are only established for sigma <= 1/3")
    if a2 is None:
        a2 = 1.0 / (3.0 * sigma)
    a = math.sqrt(a2)
    S, u = orbit.S, orbit.u
    in_R = S <= _upper_bound(u, sigma) + slack
    in_Q = invariant_Q(u, sigma, a) <= S + slack

    ub = u_bar(sigma)
    uu = np.linspace(0.0, ub, n_flux, endpoint=False)
    Q = invariant_Q(uu, sigma, a)
    inside = (Q > 0) & (Q < _upper_bound(uu, sigma))
    uu, Q = uu[inside], Q[inside]
    F, G = autonomous_field(Q, uu, sigma)
    margin = np.abs(_dQ_du(uu, sigma, a)) - np.abs(F / G)
    flux_ok = bool(np.all(margin >= -1e-12 * np.abs(F / G)))
    return InvariantReport(in_R=in_R, in_Q=in_Q, a2=a2, flux_ok=flux_ok,
                           flux_u=uu, flux_margin=margin)


def certify(orbit: Orbit, slack: float = SANDWICH_SLACK) -> list[str]:
    problems = []
    if orbit.S[0] != 1.0 or orbit.u[0] != 0.0:
        problems.append("orbit does not start at (S, u) = (1, 0)")
    if not np.all(np.diff(orbit.S) < 0):
        problems.append("S is not strictly decreasing")
    if not np.all(np.diff(orbit.u) > 0):
        bad = int(np.argmin(np.diff(orbit.u) > 0)) + 1
        problems.append(f"u is not strictly increasing (sample {bad}, S={orbit.S[bad]:.3e})")
    ent = entropy_mask(orbit)
    if not ent.all():
        bad = int(np.argmin(ent))
        problems.append(f"entropy region S < E(u) violated at S={orbit.S[bad]:.3e}")
    rep = verify_invariant_regions(orbit, slack=slack)
    if not rep.in_R.all():
        bad = int(np.argmin(rep.in_R))
        problems.append(f"S <= min(1, h(u)) violated at S={orbit.S[bad]:.3e}")
    if not rep.in_Q.all():
        bad = int(np.argmin(rep.in_Q))
        problems.append(f"S >= Q_a(u) violated at S={orbit.S[bad]:.3e}")
    return problems


# -- shock speed ---------------------------------------------------------------

def speed_along_orbit(orbit: Orbit) -> np.ndarray:
    """Fluid-relative shock speed s = (sigma - u) / ((1 + u) sqrt(S))."""
    return orbit.w / ((1.0 + orbit.u) * np.sqrt(orbit.S))


def speed_slope(orbit: Orbit, decades: float = 1.0) -> float:
    """Log-log slope of s(S) over the last ``decades`` of S."""
    s = speed_along_orbit(orbit)
    sel = orbit.S <= orbit.S_min * 10.0**decades
    if sel.sum() < 3:
        raise ValueError("orbit has too few samples in the last decade")
    return float(np.polyfit(np.log(orbit.S[sel]), np.log(s[sel]), 1)[0])


def classify_limit_speed(sigma: float, orbit: Orbit) -> str:
    """Limit of s as S -> 0: 'zero', 'luminal', 'divergent' or 'inconclusive'.

    s ~ S^beta over the last decade: beta > 0 means s -> 0, beta < 0 means
    blow-up, beta ~ 0 with s near 1 is the luminal case.
    """
    if orbit.S_min > 1e-8:
        raise ValueError("classification needs an orbit integrated to S_min <= 1e-8")
    s = speed_along_orbit(orbit)
    beta = speed_slope(orbit)
    last = orbit.S <= orbit.S_min * 10.0
    falling = s[last][-1] < s[last][0]
    if beta > 0.2 and falling:
        return "zero"
    if beta < -0.2 and not falling and s[-1] > 1.0:
        return "divergent"
    if abs(beta) < 0.05 and abs(s[-1] - 1.0) < 0.02 and np.all(s <= 1.0):
        return "luminal"
    return "inconclusive"


def fit_m_star(orbit: Orbit, window: tuple[float, float] = (1e-8, 1e-6)) -> float:
    """Least-squares m in 1/3 - u ~ m sqrt(S) over ``window`` (line through the origin)."""
    if not is_radiation(orbit.sigma):
        raise ValueError("m* is defined for sigma = 1/3 only")
    lo, hi = window
    sel = (orbit.S >= lo * (1 - 1e-9)) & (orbit.S <= hi * (1 + 1e-9))
    if sel.sum() < 2:
        raise ValueError(f"orbit has fewer than 2 samples in S-window {window}")
    x = np.sqrt(orbit.S[sel])
    y = THIRD - orbit.u[sel]
    return float(np.dot(x, y) / np.dot(x, x))
