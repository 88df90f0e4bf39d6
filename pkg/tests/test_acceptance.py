"""Acceptance gate: one PASS/FAIL line per criterion, printed past pytest's capture.

Criteria 6 and 7 are split so the emergence-time parts are reported on their
own lines next to the parts that pass.
"""

import math
import time
import warnings

import numpy as np
import pytest
from scipy.optimize import brentq

from frwshock import cli, os_solution, phase_plane
from frwshock.estimates import numeric_report, sqrtN0_bounds, tcrit_ratio_bounds, visibility_product
from frwshock.frw_background import (
    KAPPA,
    background_from_h0,
    friedmann_residuals,
    mass_decay_exponent,
    mass_inside,
    state_at,
)
from frwshock.reconstruction import assemble, finite_difference_speed
from frwshock.verification import det_jump, VerifyConfig

GRID_ENTROPY = (0.01, 0.05, 0.1, 0.2, 0.3, 1 / 3)
GRID_BOUNDS = (0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 1 / 3)


@pytest.fixture
def verdict(capsys):
    def emit(label, passed, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {label}: {'PASS' if passed else 'FAIL'} | {detail}")
        assert passed, detail
    return emit


def _orbit(sigma, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return phase_plane.integrate_orbit(sigma, **kw)


@pytest.fixture(scope="module")
def reports():
    return {s: numeric_report(assemble(_orbit(s), visibility_product(s))) for s in GRID_BOUNDS}


def test_1_m_star(verdict):
    t0 = time.perf_counter()
    m = phase_plane.fit_m_star(_orbit(1 / 3))
    dt = time.perf_counter() - t0
    ok = abs(m / (4 / 3) - 1) <= 0.02 and dt < 5
    verdict("1 m* asymptotic", ok, f"m* = {m:.6f} (4/3 = 1.333333), {dt:.2f}s")


def test_2_speed_limits(verdict):
    t0 = time.perf_counter()
    parts, ok = [], True
    for s in (0.05, 0.1, 0.2, 0.3):
        smax = float(phase_plane.speed_along_orbit(_orbit(s)).max())
        ok &= smax <= math.sqrt(3 * s) + 1e-9
        parts.append(f"{s}:{smax:.4f}<={math.sqrt(3 * s):.4f}")
    o = _orbit(1 / 3)
    sp = phase_plane.speed_along_orbit(o)
    s8 = float(np.interp(math.log(1e-8), np.log(o.S[::-1]), sp[::-1]))
    ok &= bool(sp.max() < 1) and 0.98 <= s8 <= 1
    s4 = float(phase_plane.speed_along_orbit(_orbit(0.4)).max())
    ok &= s4 > 1
    dt = time.perf_counter() - t0
    ok &= dt < 10
    verdict("2 speed limits", ok,
            f"{' '.join(parts)}; 1/3: sup {sp.max():.6f}, s(1e-8) {s8:.6f}; 0.4: max {s4:.4g}; {dt:.2f}s")


def test_3_entropy_region(verdict):
    bad = []
    for s in GRID_ENTROPY:
        o = _orbit(s)
        interior = o.S < 1
        if not np.all(o.S[interior] < phase_plane.entropy_boundary_E(o.u[interior], s)):
            bad.append(s)
    verdict("3 entropy region", not bad, f"violations at sigma {bad or 'none'}")


def test_4_sandwich(verdict):
    worst = -math.inf
    for s in GRID_ENTROPY:
        o = _orbit(s)
        assert o.certified
        Q = phase_plane.invariant_Q(o.u, s, math.sqrt(1 / (3 * s)))
        upper = np.ones_like(o.u)
        pos = o.u > 0
        upper[pos] = np.minimum(1.0, phase_plane.isocline_h(o.u[pos], s))
        worst = max(worst, float(np.max(Q - o.S)), float(np.max(o.S - upper)))
    verdict("4 invariant-region sandwich", worst <= 1e-9, f"largest excursion {worst:.2e} (slack 1e-9)")


def test_5_rankine_hugoniot(verdict):
    t0 = time.perf_counter()
    ok, detail = det_jump(VerifyConfig(n_random=1000))
    dt = time.perf_counter() - t0
    verdict("5 Rankine-Hugoniot battery", ok and dt < 1, f"{detail}; {dt:.2f}s")


def test_6a_sqrtN0_bracketing(verdict, reports):
    bad = [s for s, r in reports.items() if not r.sqrtN0_bracketed]
    detail = ", ".join(f"{s:.3g}:{r.sqrtN0_numeric:.4f}" for s, r in reports.items())
    verdict("6a sqrtN0 within bounds", not bad, f"{detail}; outside: {bad or 'none'}")


def test_6b_tcrit_bracketing(verdict, reports):
    bad = [s for s, r in reports.items() if not r.tcrit_bracketed]
    detail = ", ".join(f"{s:.3g}:{r.tcrit_ratio_numeric:.3f} in [{r.tcrit_ratio_lower:.3f},{r.tcrit_ratio_upper:.3f}]"
                       for s, r in reports.items())
    rc = all(r.H0_r_crit_bracketed for r in reports.values())
    verdict("6b t_crit/t0 within bounds", not bad,
            f"{detail}; outside: {bad or 'none'}; H0 r_crit within the same bounds for all: {rc}")


def test_6c_radiation_tcrit(verdict, reports):
    r = reports[1 / 3]
    ok = 1.8446 <= r.tcrit_ratio_numeric <= 4.4817
    verdict("6c sigma=1/3 t_crit/t0 in [1.8446, 4.4817]", ok, f"{r.tcrit_ratio_numeric:.4f}")


def test_7a_dust_limit_sqrtN0(verdict, reports):
    r = reports[0.001]
    verdict("7a sigma=1e-3 sqrtN0 within 5% of 2", abs(r.sqrtN0_numeric / 2 - 1) <= 0.05,
            f"{r.sqrtN0_numeric:.4f}")


def test_7b_dust_limit_tcrit(verdict, reports):
    r = reports[0.001]
    exact = os_solution.os_observability().tcrit_ratio
    verdict("7b sigma=1e-3 t_crit/t0 within 5% of 2", abs(r.tcrit_ratio_numeric / 2 - 1) <= 0.05,
            f"{r.tcrit_ratio_numeric:.4f}; exact dust value t_s/t0 = {exact:g}; H0 r_crit = {r.H0_r_crit:.4f}")


def test_7c_horizon_crossing(verdict):
    worst = 0.0
    for M in (0.01, 0.75, 1.0, 7.0, 1e3):
        t = brentq(lambda x: os_solution.interface_rbar_at(M, x) - 2 * M, 1e-6 * M, 10 * M,
                   xtol=1e-15 * M, rtol=4 * np.finfo(float).eps)
        worst = max(worst, abs(t / os_solution.horizon_crossing_time(M) - 1))
    verdict("7c t_s = 4M/3 vs root-solve", worst < 1e-10, f"max rel err {worst:.1e}")


def test_8_background(verdict):
    worst = slope_err = 0.0
    ts = np.logspace(-3, 3, 61)
    for s in (0.0, 0.05, 0.2, 1 / 3, 0.6, 1.0):
        bg = background_from_h0(s, 1.0)
        for t in ts:
            worst = max(worst, *map(abs, friedmann_residuals(bg, float(t))))
        M = [mass_inside(st, st.R) for st in (state_at(bg, float(t)) for t in ts)]
        slope_err = max(slope_err, abs(np.polyfit(np.log(ts), np.log(M), 1)[0] - mass_decay_exponent(s)))
    verdict("8 background identities", worst < 1e-10 and slope_err < 1e-6,
            f"residual {worst:.1e}, mass exponent error {slope_err:.1e}")


def test_9_reconstruction(verdict):
    worst_id = worst_fd = 0.0
    for s in (0.01, 0.1, 0.2, 1 / 3):
        sol = assemble(_orbit(s, points_per_decade=200), 1.0)
        N, rbar, r, rho = (sol.column(k) for k in ("N", "rbar", "r", "rho"))
        rel = lambda a, b: float(np.max(np.abs(a / b - 1)))
        worst_id = max(worst_id, rel((sol.H() * rbar) ** 2, N), rel(sol.R() * r, rbar),
                       rel(KAPPA / 6 * rho * rbar**3, N * rbar / 2))
        worst_fd = max(worst_fd, rel(finite_difference_speed(sol)[1:-1], sol.column("s")[1:-1]))
    verdict("9 reconstruction consistency", worst_id < 1e-10 and worst_fd < 1e-4,
            f"identities {worst_id:.1e}, speed routes {worst_fd:.1e}")


def test_10_runtime(verdict, capsys):
    t0 = time.perf_counter()
    code = cli.main(["verify"])
    t_verify = time.perf_counter() - t0
    t0 = time.perf_counter()
    cli.main(["run", "--sigma", "0.2", "--format", "json"])
    t_run = time.perf_counter() - t0
    capsys.readouterr()
    verdict("10 runtime", t_verify < 60 and t_run < 5,
            f"verify {t_verify:.1f}s (exit {code}), run {t_run:.2f}s")
