"""Property batteries behind ``frwshock verify``.

Each battery returns a :class:`BatteryResult`; orbits are cached per run so
batteries sharing a sigma grid do not re-integrate.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from frwshock import estimates, os_solution, phase_plane, reconstruction, shock_matching
from frwshock.frw_background import (
    KAPPA,
    background_from_h0,
    friedmann_residuals,
    mass_decay_exponent,
    mass_inside,
    state_at,
)
from frwshock.tov_interior import B_VARIANTS, HORIZON_EPS

SIGMA_GRID = (0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 1.0 / 3.0)
CERTIFIED_GRID = (0.01, 0.05, 0.1, 0.2, 0.3, 1.0 / 3.0)
SPEED_GRID = (0.05, 0.1, 0.2, 0.3)


@dataclass
class VerifyConfig:
    s_min: float = phase_plane.DEFAULT_S_MIN
    rel_tol: float = phase_plane.DEFAULT_REL_TOL
    b_variant: str = "dimensional"
    b_variant_tol: float = math.inf
    horizon_eps: float = HORIZON_EPS
    seed: int = 12345
    n_random: int = 1000
    fd_points_per_decade: int = 200
    _cache: dict = field(default_factory=dict, repr=False)

    def orbit(self, sigma: float, points_per_decade: int = phase_plane.POINTS_PER_DECADE):
        key = (sigma, points_per_decade)
        if key not in self._cache:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                self._cache[key] = phase_plane.integrate_orbit(
                    sigma, S_min=self.s_min, rel_tol=self.rel_tol,
                    points_per_decade=points_per_decade)
        return self._cache[key]


@dataclass(frozen=True)
class BatteryResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _max_rel(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.abs(b)))


def background(cfg: VerifyConfig) -> tuple[bool, str]:
    ts = np.logspace(-3, 3, 61)
    worst = 0.0
    for sigma in (0.0, 0.1, 1.0 / 3.0, 1.0):
        bg = background_from_h0(sigma, 1.0)
        for t in ts:
            worst = max(worst, *map(abs, friedmann_residuals(bg, float(t))))
    slope_err = 0.0
    for sigma in (0.0, 0.1, 1.0 / 3.0, 1.0):
        bg = background_from_h0(sigma, 1.0)
        M = [mass_inside(st, st.R * 1.0) for st in (state_at(bg, float(t)) for t in ts)]
        slope = np.polyfit(np.log(ts), np.log(M), 1)[0]
        slope_err = max(slope_err, abs(slope - mass_decay_exponent(sigma)))
    ok = worst < 1e-10 and slope_err < 1e-6
    return ok, f"max Friedmann/continuity residual {worst:.1e}; mass-exponent error {slope_err:.1e}"


def random_matched_states(n: int, seed: int):
    """States with rho > rhobar > 0, N in (1, 100), p = sigma rho and pbar from the constraint."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        sigma = rng.uniform(0.0, 1.0)
        rho = 10.0 ** rng.uniform(-3, 3)
        rhobar = rho * rng.uniform(0.01, 0.99)
        N = rng.uniform(1.0 + 1e-6, 100.0)
        p = sigma * rho
        pbar = shock_matching.pbar_from_constraint(rho, p, rhobar, N)
        if rho + pbar <= 1e-3 * rho:
            continue  # normal degenerates as rho + pbar -> 0
        psi = rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-2, 2)
        out.append((shock_matching.MatchedState(rho, p, rhobar, pbar, N), psi))
    return out


def det_jump(cfg: VerifyConfig) -> tuple[bool, str]:
    worst_det = worst_c0 = worst_c1 = 0.0
    for state, psi in random_matched_states(cfg.n_random, cfg.seed):
        res = shock_matching.rankine_hugoniot_residual(state, psi)
        worst_det = max(worst_det, res.rel_det)
        worst_c0 = max(worst_c0, res.rel_contraction0)
        worst_c1 = max(worst_c1, res.rel_contraction1)
    # constraint violated: pbar perturbed, the second contraction must still vanish
    rng = np.random.default_rng(cfg.seed + 1)
    worst_off = 0.0
    min_det_off = math.inf
    for state, psi in random_matched_states(200, cfg.seed + 2):
        bad = shock_matching.MatchedState(state.rho, state.p, state.rhobar,
                                          state.pbar + state.rho * rng.uniform(0.05, 0.5), state.N)
        res = shock_matching.rankine_hugoniot_residual(bad, psi)
        worst_off = max(worst_off, res.rel_contraction1)
        min_det_off = min(min_det_off, res.rel_det)
    ok = max(worst_det, worst_c0, worst_c1) < 1e-10 and worst_off < 1e-12 and min_det_off > 1e-10
    return ok, (f"rel det {worst_det:.1e}, contractions {worst_c0:.1e}/{worst_c1:.1e}; "
                f"off-constraint: contraction1 {worst_off:.1e}, min rel det {min_det_off:.1e}")


def entropy(cfg: VerifyConfig) -> tuple[bool, str]:
    failed = []
    for sigma in CERTIFIED_GRID:
        orbit = cfg.orbit(sigma)
        if not phase_plane.entropy_mask(orbit).all() or orbit.violations:
            failed.append(f"{sigma:.4g}")
    return not failed, ("all orbit samples inside S < E(u)" if not failed
                        else "violations at sigma " + ", ".join(failed))


def sandwich(cfg: VerifyConfig) -> tuple[bool, str]:
    failed = []
    for sigma in CERTIFIED_GRID:
        orbit = cfg.orbit(sigma)
        rep = phase_plane.verify_invariant_regions(orbit)
        if not rep.all_ok:
            failed.append(f"{sigma:.4g}")
    witness = phase_plane.verify_invariant_regions(cfg.orbit(0.2), a2=10.0 / (3.0 * 0.2))
    if witness.flux_ok:
        failed.append("flux witness a^2 = 10/(3 sigma) not detected")
    return not failed, ("Q_a(u) <= S <= min(1, h(u)) and boundary flux hold" if not failed
                        else "failed: " + ", ".join(failed))


def m_star(cfg: VerifyConfig) -> tuple[bool, str]:
    m = phase_plane.fit_m_star(cfg.orbit(1.0 / 3.0))
    ok = abs(m / phase_plane.M_STAR - 1.0) <= 0.02
    return ok, f"fitted m* = {m:.6f} (4/3 within 2%: {ok})"


def speed_limits(cfg: VerifyConfig) -> tuple[bool, str]:
    parts, ok = [], True
    for sigma in SPEED_GRID:
        smax = float(phase_plane.speed_along_orbit(cfg.orbit(sigma)).max())
        good = smax <= math.sqrt(3 * sigma) + 1e-9
        ok &= good
        parts.append(f"{sigma:g}:{smax:.4f}")
    o3 = cfg.orbit(1.0 / 3.0)
    s3 = phase_plane.speed_along_orbit(o3)
    s_1e8 = float(np.interp(math.log(1e-8), np.log(o3.S[::-1]), s3[::-1]))
    ok &= bool(s3.max() < 1.0) and 0.98 <= s_1e8 <= 1.0
    s4 = float(phase_plane.speed_along_orbit(cfg.orbit(0.4)).max())
    ok &= s4 > 1.0
    return ok, f"max s {' '.join(parts)}; sigma=1/3: sup {s3.max():.6f}, s(1e-8) {s_1e8:.6f}; sigma=0.4 max {s4:.3g}"


def _report(cfg: VerifyConfig, sigma: float) -> estimates.ObservabilityReport:
    orbit = cfg.orbit(sigma)
    sol = reconstruction.assemble(orbit, estimates.visibility_product(sigma),
                                  b_variant=cfg.b_variant, horizon_eps=cfg.horizon_eps)
    return estimates.numeric_report(sol)


def visibility_bounds(cfg: VerifyConfig) -> tuple[bool, str]:
    bad_n, bad_t, bad_rc = [], [], []
    for sigma in SIGMA_GRID:
        rep = _report(cfg, sigma)
        if not rep.sqrtN0_bracketed:
            bad_n.append(f"{sigma:g}")
        if not rep.tcrit_bracketed:
            bad_t.append(f"{sigma:g}({rep.tcrit_ratio_numeric:.3f}>{rep.tcrit_ratio_upper:.3f})")
        if not rep.H0_r_crit_bracketed:
            bad_rc.append(f"{sigma:g}")
    ok = not (bad_n or bad_t)
    detail = (f"sqrtN0 outside bounds: {bad_n or 'none'}; t_crit/t0 outside bounds: {bad_t or 'none'}; "
              f"H0 r_crit outside bounds: {bad_rc or 'none'}")
    return ok, detail


def os_limit(cfg: VerifyConfig) -> tuple[bool, str]:
    rep = _report(cfg, 1e-3)
    n_ok = abs(rep.sqrtN0_numeric / 2.0 - 1.0) <= 0.05
    t_ok = abs(rep.tcrit_ratio_numeric / 2.0 - 1.0) <= 0.05
    worst = 0.0
    for M in (0.1, 0.75, 1.0, 3.0, 100.0):
        ts = brentq(lambda t: os_solution.interface_rbar_at(M, t) - 2.0 * M, 1e-6 * M, 10.0 * M,
                    xtol=1e-15 * M, rtol=4 * np.finfo(float).eps)
        worst = max(worst, abs(ts / os_solution.horizon_crossing_time(M) - 1.0))
    ok = n_ok and t_ok and worst < 1e-10
    return ok, (f"sigma=1e-3: sqrtN0 {rep.sqrtN0_numeric:.4f} (within 5% of 2: {n_ok}), "
                f"t_crit/t0 {rep.tcrit_ratio_numeric:.4f} (within 5% of 2: {t_ok}; "
                f"exact dust value {os_solution.os_observability().tcrit_ratio:g}); "
                f"t_s root-solve rel err {worst:.1e}")


def reconstruction_battery(cfg: VerifyConfig) -> tuple[bool, str]:
    worst_id = worst_fd = 0.0
    for sigma in (0.01, 0.1, 1.0 / 3.0):
        orbit = cfg.orbit(sigma, cfg.fd_points_per_decade)
        sol = reconstruction.assemble(orbit, 1.0, b_variant=cfg.b_variant, horizon_eps=cfg.horizon_eps)
        N, rbar, r, rho = (sol.column(k) for k in ("N", "rbar", "r", "rho"))
        worst_id = max(worst_id,
                       _max_rel((sol.H() * rbar) ** 2, N),
                       _max_rel(sol.R() * r, rbar),
                       _max_rel(KAPPA / 6.0 * rho * rbar**3, N * rbar / 2.0),
                       _max_rel(rho, 3.0 * N / (KAPPA * rbar**2)))
        s = sol.column("s")
        fd = reconstruction.finite_difference_speed(sol)
        worst_fd = max(worst_fd, _max_rel(fd[1:-1], s[1:-1]))
    ok = worst_id < 1e-10 and worst_fd < 1e-4
    return ok, f"row identities {worst_id:.1e}; finite-difference speed {worst_fd:.1e}"


def b_variant(cfg: VerifyConfig) -> tuple[bool, str]:
    orbit = cfg.orbit(0.1)
    logs = []
    for variant in B_VARIANTS:
        sol = reconstruction.assemble(orbit, 1.0, b_variant=variant, horizon_eps=cfg.horizon_eps)
        valid = sol.column("B_valid").astype(bool)
        log_B = np.where(valid, np.log(np.where(valid, sol.column("B"), 1.0)), np.nan)
        # rows run toward the horizon, where B = 1; ln B must rise along them
        if np.any(np.diff(log_B[valid]) < 0):
            return False, f"ln B not monotone for variant {variant}"
        logs.append(log_B)
    both = ~np.isnan(logs[0]) & ~np.isnan(logs[1])
    mism = float(np.max(np.abs(logs[0][both] - logs[1][both]))) if both.any() else math.inf
    ok = mism <= cfg.b_variant_tol
    return ok, f"max |ln B_literal - ln B_dimensional| = {mism:.3g} (tolerance {cfg.b_variant_tol:g})"


BATTERIES: dict[str, Callable[[VerifyConfig], tuple[bool, str]]] = {
    "background": background,
    "det-jump": det_jump,
    "entropy": entropy,
    "sandwich": sandwich,
    "m-star": m_star,
    "speed-limits": speed_limits,
    "visibility-bounds": visibility_bounds,
    "os-limit": os_limit,
    "reconstruction": reconstruction_battery,
    "b-variant": b_variant,
}


def run_batteries(cfg: VerifyConfig, only=None) -> list[BatteryResult]:
    names = list(BATTERIES) if not only else list(only)
    unknown = [n for n in names if n not in BATTERIES]
    if unknown:
        raise KeyError(f"unknown battery {unknown[0]!r}; choose from {', '.join(BATTERIES)}")
    results = []
    for name in names:
        t0 = time.perf_counter()
        try:
            ok, detail = BATTERIES[name](cfg)
        except Exception as exc:  # a crashing battery is a failing battery
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(BatteryResult(name, bool(ok), detail, time.perf_counter() - t0))
    return results
