"""Analytic bounds on when and where the shock becomes visible, and their numeric counterparts.

Visibility: light emitted at the Big Bang from the shock position r* reaches
the FRW center at t0, which fixes H0 r* = 2/(1 + 3 sigma). Emergence: the
shock leaves the black hole (N = 1, S = 1) at t_crit.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import bisect

from frwshock.os_solution import os_observability
from frwshock.phase_plane import THIRD, is_radiation
from frwshock.reconstruction import ShockSolution

BRACKET_SLACK = 1e-9
S0_XTOL = 1e-12


def _check_sigma(sigma: float) -> None:
    if not 0.0 <= sigma <= THIRD + 1e-12:
        raise ValueError(f"bounds hold for 0 <= sigma <= 1/3, got {sigma!r}")


def visibility_product(sigma: float) -> float:
    """H0 r* at first visibility."""
    _check_sigma(sigma)
    return 2.0 / (1.0 + 3.0 * sigma)


def sqrtN0_bounds(sigma: float) -> tuple[float, float]:
    """Bounds on the number of Hubble lengths to the shock at first visibility."""
    lo = visibility_product(sigma)
    return lo, lo * math.exp(math.sqrt(3.0 * sigma) * (1.0 + 3.0 * sigma) / (1.0 + sigma))


def tcrit_ratio_bounds(sigma: float) -> tuple[float, float]:
    """Bounds on H0 r_crit, the emergence quantity the analytic estimate controls.

    At sigma = 1/3 the sharper radiation-specific form is returned.
    """
    if is_radiation(sigma):
        return math.exp(math.sqrt(6.0) / 4.0), math.exp(1.5)
    c = visibility_product(sigma)
    return c * math.exp(sigma / 4.0), c * math.exp(2.0 * math.sqrt(3.0 * sigma) / (1.0 + sigma))


def position_bounds(sigma: float, S0: float) -> tuple[float, float]:
    """Bounds on r(S0)/r*."""
    _check_sigma(sigma)
    if not 0.0 < S0 <= 1.0:
        raise ValueError("S0 must lie in (0, 1]")
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    rS = math.sqrt(S0)
    if is_radiation(sigma):
        return math.exp(math.sqrt(6.0) * rS / 4.0), math.exp(1.5 * rS)
    return math.exp(sigma * S0 / 4.0), math.exp(2.0 * math.sqrt(3.0 * sigma) * rS / (1.0 + sigma))


@dataclass(frozen=True)
class ObservabilityReport:
    """Visibility and emergence numbers for one sigma.

    ``tcrit_ratio_numeric`` is t_crit/t0 including the expansion factor at
    emergence, (H0 r(1))^(3(1+sigma)/(1+3 sigma)). ``H0_r_crit`` is H0 r(1),
    which is what the analytic t_crit bounds actually bracket; the two agree
    only if R(t_crit) = 1.
    """

    sigma: float
    H0_r_star: float
    sqrtN0_numeric: float
    sqrtN0_lower: float
    sqrtN0_upper: float
    tcrit_ratio_numeric: float
    tcrit_ratio_lower: float
    tcrit_ratio_upper: float
    S0: float
    H0_r_crit: float
    r_star_error: float = 0.0

    @property
    def sqrtN0_bracketed(self) -> bool:
        return _within(self.sqrtN0_numeric, self.sqrtN0_lower, self.sqrtN0_upper)

    @property
    def tcrit_bracketed(self) -> bool:
        return _within(self.tcrit_ratio_numeric, self.tcrit_ratio_lower, self.tcrit_ratio_upper)

    @property
    def H0_r_crit_bracketed(self) -> bool:
        return _within(self.H0_r_crit, self.tcrit_ratio_lower, self.tcrit_ratio_upper)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.update(sqrtN0_bracketed=self.sqrtN0_bracketed, tcrit_bracketed=self.tcrit_bracketed,
                 H0_r_crit_bracketed=self.H0_r_crit_bracketed)
        return d


def _within(x: float, lo: float, hi: float, slack: float = BRACKET_SLACK) -> bool:
    return lo - slack * abs(lo) <= x <= hi + slack * abs(hi)


def tcrit_from_emergence(H0_r1: float, sigma: float) -> float:
    """t_crit/t0 from H0 r(1).

    At emergence N = 1, so H_crit rbar_crit = 1 and t_crit/t0 = H0/H_crit =
    H0 R_crit r(1). With R = (t/t0)^(2/(3(1+sigma))) this solves to
    (H0 r(1))^(3(1+sigma)/(1+3 sigma)).
    """
    return H0_r1 ** (3.0 * (1.0 + sigma) / (1.0 + 3.0 * sigma))


def numeric_report(solution: ShockSolution) -> ObservabilityReport:
    """Numeric visibility numbers for a reconstructed solution.

    Only H0 r* enters, and it is fixed by the visibility condition, so the
    solution's own H0 does not matter.
    """
    sigma = solution.sigma
    orbit = solution.orbit
    if orbit.exploratory:
        raise ValueError("visibility estimates need sigma <= 1/3")
    c = visibility_product(sigma)
    prof = solution.profile
    shift = prof.log_tail - float(orbit.log_r[-1])

    def mismatch(S: float) -> float:
        r = math.exp(float(orbit.log_r_at(S)) + shift)
        return S * (c * r) ** 2 - 1.0

    lo, hi = orbit.S_min, 1.0
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if not (f_lo < 0.0 < f_hi or f_hi == 0.0):
        raise ValueError(f"visibility root not bracketed in [{lo:g}, 1]: f={f_lo:.3g}, {f_hi:.3g}")
    S0 = 1.0 if f_hi == 0.0 else bisect(mismatch, lo, hi, xtol=S0_XTOL)
    H0_r1 = c * float(prof.r_over_rstar[0])
    n_lo, n_hi = sqrtN0_bounds(sigma)
    t_lo, t_hi = tcrit_ratio_bounds(sigma)
    return ObservabilityReport(
        sigma=sigma, H0_r_star=c,
        sqrtN0_numeric=1.0 / math.sqrt(S0), sqrtN0_lower=n_lo, sqrtN0_upper=n_hi,
        tcrit_ratio_numeric=tcrit_from_emergence(H0_r1, sigma),
        tcrit_ratio_lower=t_lo, tcrit_ratio_upper=t_hi,
        S0=S0, H0_r_crit=H0_r1, r_star_error=prof.tail_bound,
    )


def os_report() -> ObservabilityReport:
    """sigma = 0 report from the exact dust interface."""
    obs = os_observability()
    n_lo, n_hi = sqrtN0_bounds(0.0)
    t_lo, t_hi = tcrit_ratio_bounds(0.0)
    return ObservabilityReport(
        sigma=0.0, H0_r_star=visibility_product(0.0),
        sqrtN0_numeric=obs.sqrtN0, sqrtN0_lower=n_lo, sqrtN0_upper=n_hi,
        tcrit_ratio_numeric=obs.tcrit_ratio, tcrit_ratio_lower=t_lo, tcrit_ratio_upper=t_hi,
        S0=1.0 / obs.sqrtN0**2, H0_r_crit=obs.H0_r_crit,
    )


def bounds_table(sigmas) -> np.ndarray:
    """Rows (sigma, sqrtN0 lo, hi, tcrit lo, hi) for plotting the bounds in sigma."""
    return np.array([(s, *sqrtN0_bounds(s), *tcrit_ratio_bounds(s)) for s in sigmas])
