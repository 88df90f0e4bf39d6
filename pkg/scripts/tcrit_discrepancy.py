"""Emergence time versus emergence radius as sigma -> 0.

Prints t_crit/t0 from the reconstruction beside H0 r_crit and the dust-limit
values: the comoving interface reaches the horizon at t_s = 8 t0 while
H0 r_crit = 2. The analytic emergence bounds track H0 r_crit.
"""

import warnings

from frwshock import estimates, os_solution, phase_plane, reconstruction

SIGMAS = (0.3, 0.1, 0.03, 0.01, 0.003, 0.001, 0.0003)


def main():
    print("sigma,tcrit_ratio,H0_r_crit,bound_lo,bound_hi")
    for s in SIGMAS:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            orbit = phase_plane.integrate_orbit(s)
        rep = estimates.numeric_report(reconstruction.assemble(orbit, 1.0))
        print(f"{s:g},{rep.tcrit_ratio_numeric:.6f},{rep.H0_r_crit:.6f},"
              f"{rep.tcrit_ratio_lower:.6f},{rep.tcrit_ratio_upper:.6f}")
    obs = os_solution.os_observability()
    print(f"0,{obs.tcrit_ratio:.6f},{obs.H0_r_crit:.6f},2,2")


if __name__ == "__main__":
    main()
