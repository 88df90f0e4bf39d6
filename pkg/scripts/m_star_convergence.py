"""Fitted Big-Bang slope m* at sigma = 1/3 across fit windows and tolerances.

The slope should approach 4/3 as the window moves toward S = 0; the gap
shrinks like sqrt(S) from the next term in the expansion.
"""

import argparse
import warnings

from frwshock import phase_plane

WINDOWS = ((1e-6, 1e-4), (1e-7, 1e-5), (1e-8, 1e-6), (1e-10, 1e-8), (1e-12, 1e-10))
TOLS = (1e-8, 1e-10, 1e-12)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--smin", type=float, default=1e-12)
    args = ap.parse_args(argv)

    print("rel_tol,window_lo,window_hi,m_star,rel_err")
    for tol in TOLS:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            orbit = phase_plane.integrate_orbit(1 / 3, S_min=args.smin, rel_tol=tol)
        for lo, hi in WINDOWS:
            if lo < orbit.S_min * (1 - 1e-9):
                continue
            m = phase_plane.fit_m_star(orbit, window=(lo, hi))
            print(f"{tol:g},{lo:g},{hi:g},{m:.8f},{m / phase_plane.M_STAR - 1:+.2e}")


if __name__ == "__main__":
    main()
