"""Command-line driver: ``run``, ``sweep`` and ``verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from frwshock import estimates, phase_plane, reconstruction
from frwshock.tov_interior import B_VARIANTS, HORIZON_EPS
from frwshock.verification import BATTERIES, VerifyConfig, run_batteries

RUN_TIME_BUDGET = 5.0


@dataclass
class RunConfig:
    sigma: float
    h0: float = 1.0
    s_min: float = phase_plane.DEFAULT_S_MIN
    rel_tol: float = phase_plane.DEFAULT_REL_TOL
    b_variant: str = "dimensional"
    horizon_eps: float = HORIZON_EPS
    points_per_decade: int = phase_plane.POINTS_PER_DECADE
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if not 0.0 <= self.sigma < 1.0:
            raise ValueError(f"sigma must lie in [0, 1), got {self.sigma}")
        if 0.0 < self.sigma < phase_plane.SIGMA_MIN:
            raise ValueError(f"sigma in (0, {phase_plane.SIGMA_MIN:g}) is below the orbit guard; "
                             "use sigma = 0 for the dust limit")
        if not self.h0 > 0.0:
            raise ValueError("h0 must be positive")
        if not 0.0 < self.s_min < 1.0:
            raise ValueError("smin must lie in (0, 1)")
        if not 0.0 < self.rel_tol < 1e-3:
            raise ValueError("rel-tol must lie in (0, 1e-3)")
        if self.b_variant not in B_VARIANTS:
            raise ValueError(f"b-variant must be one of {B_VARIANTS}")
        if not self.horizon_eps > 0.0:
            raise ValueError("horizon-eps must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")


@dataclass
class RunResult:
    solution: Optional[reconstruction.ShockSolution]
    summary: dict = field(default_factory=dict)


# -- serialization ---------------------------------------------------------------

def fmt(x) -> str:
    """17 significant digits (round-trips binary64); booleans lower-case; None empty."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row.get(c) if isinstance(row, dict) else getattr(row, c)) for c in columns])
    return buf.getvalue()


def dump_json(obj) -> str:
    return json.dumps(_json_safe(obj), indent=2, sort_keys=False) + "\n"


# -- commands --------------------------------------------------------------------

def execute_run(cfg: RunConfig) -> RunResult:
    caught: list[str] = []
    with warnings.catch_warnings(record=True) as wlist:
        warnings.simplefilter("always")
        if cfg.sigma == 0.0:
            caught.append("sigma = 0: exact dust interface, no orbit integrated")
            summary = {
                "sigma": 0.0, "h0": cfg.h0, "speed_class": "zero", "exploratory": False,
                "report": estimates.os_report().as_dict(),
            }
            solution = None
        else:
            orbit = phase_plane.integrate_orbit(cfg.sigma, S_min=cfg.s_min, rel_tol=cfg.rel_tol,
                                                points_per_decade=cfg.points_per_decade)
            solution = reconstruction.assemble(orbit, cfg.h0, b_variant=cfg.b_variant,
                                               horizon_eps=cfg.horizon_eps)
            summary = {"sigma": cfg.sigma, "h0": cfg.h0}
            if phase_plane.is_radiation(cfg.sigma) and cfg.s_min <= 1e-8:
                summary["m_star"] = phase_plane.fit_m_star(orbit)
            if cfg.s_min <= 1e-8:
                summary["speed_class"] = phase_plane.classify_limit_speed(cfg.sigma, orbit)
            else:
                summary["speed_class"] = "inconclusive"
                caught.append("speed classification needs smin <= 1e-8")
            summary["exploratory"] = orbit.exploratory
            if orbit.halted_at is not None:
                summary["halted_at"] = orbit.halted_at
            if orbit.exploratory:
                summary["report"] = None
                caught.append("sigma > 1/3: exploratory run, certification and visibility bounds off")
            else:
                summary["report"] = estimates.numeric_report(solution).as_dict()
            summary["r_star_error"] = solution.r_star_error
            summary["b_variant"] = solution.b_variant
    caught = [str(w.message) for w in wlist] + caught
    summary["warnings"] = caught
    summary["config"] = {k: v for k, v in asdict(cfg).items() if k not in ("out", "format")}
    return RunResult(solution, summary)


def cmd_run(args) -> int:
    cfg = RunConfig(sigma=args.sigma, h0=args.h0, s_min=args.smin, rel_tol=args.rel_tol,
                    b_variant=args.b_variant, horizon_eps=args.horizon_eps,
                    points_per_decade=args.points_per_decade, out=args.out, format=args.format)
    t0 = time.perf_counter()
    res = execute_run(cfg)
    res.summary["seconds"] = round(time.perf_counter() - t0, 3)
    rows = res.solution.rows if res.solution is not None else ()
    table = rows_to_csv(rows, reconstruction.ROW_FIELDS)
    if cfg.format == "json":
        doc = dict(res.summary, rows=[{k: getattr(r, k) for k in reconstruction.ROW_FIELDS} for r in rows])
        _emit(cfg.out, ".json", dump_json(doc))
    else:
        _emit(cfg.out, ".csv", table)
        if cfg.out:
            _emit(cfg.out, ".json", dump_json(res.summary))
        else:
            sys.stderr.write(dump_json(res.summary))
    return 0


def _emit(stem: Optional[str], suffix: str, text: str) -> None:
    if stem:
        Path(stem).with_suffix(suffix).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


SWEEP_COLUMNS = ("sigma", "H0_r_star", "S0", "sqrtN0_numeric", "sqrtN0_lower", "sqrtN0_upper",
                 "sqrtN0_bracketed", "tcrit_ratio_numeric", "tcrit_ratio_lower", "tcrit_ratio_upper",
                 "tcrit_bracketed", "H0_r_crit", "H0_r_crit_bracketed", "r_star_error", "error")


def sweep_rows(sigmas, s_min, rel_tol) -> tuple[list[dict], list[str]]:
    notes = []
    unique = sorted(set(sigmas))
    if len(unique) != len(sigmas):
        notes.append(f"duplicate sigma values removed ({len(sigmas) - len(unique)} dropped)")
    rows = []
    for sigma in unique:
        try:
            if sigma == 0.0:
                rep = estimates.os_report()
            else:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    orbit = phase_plane.integrate_orbit(sigma, S_min=s_min, rel_tol=rel_tol)
                sol = reconstruction.assemble(orbit, estimates.visibility_product(sigma))
                rep = estimates.numeric_report(sol)
            rows.append(dict(rep.as_dict(), error=None))
        except Exception as exc:  # recorded per row, the sweep continues
            rows.append({"sigma": sigma, "error": f"{type(exc).__name__}: {exc}"})
    return rows, notes


def cmd_sweep(args) -> int:
    rows, notes = sweep_rows(args.sigma or [], args.smin, args.rel_tol)
    for n in notes:
        print(f"warning: {n}", file=sys.stderr)
    if args.format == "json":
        _emit(args.out, ".json", dump_json({"rows": rows, "warnings": notes}))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([r.get(c) if isinstance(r.get(c), str) else fmt(r.get(c)) for c in SWEEP_COLUMNS])
        _emit(args.out, ".csv", buf.getvalue())
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig(s_min=args.smin, rel_tol=args.rel_tol, b_variant=args.b_variant,
                       b_variant_tol=args.b_variant_tol, horizon_eps=args.horizon_eps)
    results = run_batteries(cfg, args.only)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.seconds:6.2f}s  {r.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"first failure: {failed[0].name}", file=sys.stderr)
        return 1
    return 0


# -- argument parsing --------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--smin", type=float, default=phase_plane.DEFAULT_S_MIN,
                   help="smallest S = 1/N reached by the orbit (default: %(default)g)")
    p.add_argument("--rel-tol", type=float, default=phase_plane.DEFAULT_REL_TOL,
                   help="integrator relative tolerance (default: %(default)g)")
    p.add_argument("--b-variant", choices=B_VARIANTS, default="dimensional",
                   help="B integrand form (default: %(default)s)")
    p.add_argument("--horizon-eps", type=float, default=HORIZON_EPS,
                   help="B is only integrated where N > 1 + eps (default: %(default)g)")


def _output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None,
                   help="output path stem; writes <out>.csv / <out>.json (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="table format (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frwshock", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="integrate one orbit and reconstruct the shock")
    run.add_argument("--sigma", type=float, required=True,
                     help="p/rho of the FRW fluid; 0 selects the exact dust interface")
    run.add_argument("--h0", type=float, default=1.0, help="Hubble constant (default: %(default)g)")
    run.add_argument("--points-per-decade", type=int, default=phase_plane.POINTS_PER_DECADE,
                     help="orbit samples per decade of S (default: %(default)d)")
    _common(run)
    _output(run)
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="visibility report for a list of sigma values")
    sweep.add_argument("--sigma", type=float, nargs="*", default=[],
                       help="sigma values; duplicates are dropped (default: none)")
    _common(sweep)
    _output(sweep)
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="run the property batteries")
    verify.add_argument("--only", nargs="+", choices=list(BATTERIES), default=None,
                        help="run only these batteries (default: all)")
    verify.add_argument("--b-variant-tol", type=float, default=math.inf,
                        help="allowed |ln B| difference between B variants (default: %(default)g)")
    _common(verify)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, KeyError, OSError) as exc:
        print(f"frwshock {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
