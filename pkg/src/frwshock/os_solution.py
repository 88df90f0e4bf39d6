"""Zero-pressure (sigma = 0) interface between a dust FRW ball and Schwarzschild.

The interface is comoving, rbar(t) = R(t) r0, and carries the constant mass
M = (kappa/6) rho rbar^3. Only interface-local quantities are exposed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from frwshock.frw_background import KAPPA


class Orientation(enum.Enum):
    EXPANDING = "expanding"  # White Hole, dR/dt > 0
    COLLAPSING = "collapsing"  # Black Hole, dR/dt < 0

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.EXPANDING else -1


@dataclass(frozen=True)
class OSConfig:
    M: float
    rho0: float
    orientation: Orientation = Orientation.EXPANDING

    def __post_init__(self):
        if not (self.M > 0.0 and self.rho0 > 0.0):
            raise ValueError("M and rho0 must be positive")
        if not isinstance(self.orientation, Orientation):
            object.__setattr__(self, "orientation", Orientation(self.orientation))

    @property
    def r0(self) -> float:
        return interface_r0(self.M, self.rho0)


def _positive(**kw):
    for name, val in kw.items():
        if not val > 0.0:
            raise ValueError(f"{name} must be positive, got {val!r}")


def interface_r0(M: float, rho0: float) -> float:
    """Comoving FRW radius of the interface, normalized so R(t0) = 1."""
    _positive(M=M, rho0=rho0)
    return (6.0 * M / (KAPPA * rho0)) ** (1.0 / 3.0)


def shock_surface_rbar(M: float, rho_t: float) -> float:
    """Areal radius of the interface when the FRW density is rho_t."""
    _positive(M=M, rho_t=rho_t)
    return (6.0 * M / (KAPPA * rho_t)) ** (1.0 / 3.0)


def dust_density(t: float) -> float:
    """k = 0 dust density 4/(3 kappa t^2)."""
    _positive(t=t)
    return 4.0 / (3.0 * KAPPA * t * t)


def interface_rbar_at(M: float, t: float) -> float:
    """rbar(t) on a dust background; equals (9 M t^2 / 2)^(1/3)."""
    return shock_surface_rbar(M, dust_density(t))


def horizon_crossing_time(M: float) -> float:
    """FRW time at which the interface sits on rbar = 2M."""
    _positive(M=M)
    return 4.0 * M / 3.0


def transform_b(H: float, rbar: float, orientation: Orientation = Orientation.EXPANDING) -> float:
    """Coefficient b of the interface-regular coordinate transformation.

    The sign choice keeps the denominator away from zero in each orientation.
    """
    orientation = Orientation(orientation)
    den = H * rbar + orientation.sign
    if den == 0.0:
        raise ValueError("H*rbar makes the transformation singular for this orientation")
    return -1.0 / den


def phi(H: float, rbar: float, orientation: Orientation = Orientation.EXPANDING) -> float:
    """H rbar + 1/b; constant -1 (expanding) or +1 (collapsing)."""
    return H * rbar + 1.0 / transform_b(H, rbar, orientation)


def characteristic_vs_interface(H: float, rbar: float, orientation: Orientation,
                                r0: float, Rdot: float) -> tuple[float, float]:
    """(characteristic speed, interface speed) in dr/dt units scaled by r0.

    The characteristic speed is -1/b = Rdot r0 +/- 1; the interface moves at
    Rdot r0, so the two always differ by exactly 1.
    """
    orientation = Orientation(orientation)
    interface = Rdot * r0
    return interface + orientation.sign, interface


@dataclass(frozen=True)
class OSObservability:
    """Visibility quantities of the sigma = 0 limit.

    The comoving interface has H0 r_crit = H0 r* = 2, while the emergence
    time itself is the horizon crossing t_s = 4M/3 = 8 t0.
    """

    sqrtN0: float
    H0_r_crit: float
    tcrit_ratio: float


def os_observability(H0: float = 1.0) -> OSObservability:
    """Exact sigma = 0 values from the interface on a dust background.

    Visibility at t0 with H0 r* = 2 puts the interface at rbar(t0) = 2/H0,
    i.e. N0 = (H0 rbar)^2 = 4, and mass M = (kappa/6) rho0 rbar^3 = 4/H0.
    """
    _positive(H0=H0)
    t0 = 2.0 / (3.0 * H0)
    rbar0 = 2.0 / H0
    M = KAPPA / 6.0 * dust_density(t0) * rbar0**3
    t_s = horizon_crossing_time(M)
    return OSObservability(sqrtN0=H0 * rbar0, H0_r_crit=H0 * rbar0, tcrit_ratio=t_s / t0)
