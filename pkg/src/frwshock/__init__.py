"""Shock-wave cosmology inside a black hole.

A k=0 FRW interior with p = sigma*rho, matched across an outgoing shock to a
TOV metric whose areal coordinate is timelike (2M/rbar > 1). Geometric units
c = G = 1 throughout.
"""

from frwshock.frw_background import KAPPA, FRWBackground, FRWState, background_from_h0, state_at
from frwshock.phase_plane import Orbit, integrate_orbit
from frwshock.reconstruction import ShockSolution, ShockSolutionRow, assemble
from frwshock.estimates import ObservabilityReport, numeric_report

__all__ = [
    "KAPPA",
    "FRWBackground",
    "FRWState",
    "background_from_h0",
    "state_at",
    "Orbit",
    "integrate_orbit",
    "ShockSolution",
    "ShockSolutionRow",
    "assemble",
    "ObservabilityReport",
    "numeric_report",
]

__version__ = "0.1.0"
