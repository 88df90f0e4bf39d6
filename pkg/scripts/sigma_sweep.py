"""Visibility and emergence numbers against their analytic bounds over a sigma grid.

    python3 scripts/sigma_sweep.py --out results/sigma_sweep.csv
"""

import argparse
import csv
import sys
import warnings

import numpy as np

from frwshock import estimates, phase_plane, reconstruction

COLUMNS = ("sigma", "sqrtN0_lower", "sqrtN0_numeric", "sqrtN0_upper",
           "tcrit_ratio_lower", "tcrit_ratio_numeric", "tcrit_ratio_upper", "H0_r_crit",
           "r_star_error")


def report(sigma, s_min):
    if sigma == 0.0:
        return estimates.os_report()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        orbit = phase_plane.integrate_orbit(sigma, S_min=s_min)
    sol = reconstruction.assemble(orbit, estimates.visibility_product(sigma))
    return estimates.numeric_report(sol)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=25, help="interior grid points in (0, 1/3)")
    ap.add_argument("--smin", type=float, default=1e-9)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    sigmas = [0.0, 0.001, *np.linspace(0.01, 1 / 3, args.n)]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS + ("sqrtN0_in", "tcrit_in", "H0_r_crit_in"))
    for s in sigmas:
        r = report(float(s), args.smin)
        d = r.as_dict()
        w.writerow([f"{d[c]:.10g}" for c in COLUMNS]
                   + [d["sqrtN0_bracketed"], d["tcrit_bracketed"], d["H0_r_crit_bracketed"]])
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
