"""Jump conditions across an FRW/TOV shock beyond one Hubble length (N > 1).

Components are in the TOV Schwarzschild coordinates (x^0, x^1) = (rbar, tbar),
where rbar is timelike. The constraint equations are pure algebra: negative
pbar or rhobar is returned, not rejected; admissibility is decided by the
entropy inequalities in :mod:`frwshock.phase_plane`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from frwshock.frw_background import FRWState


@dataclass(frozen=True)
class MatchedState:
    """Fluid values on both sides of the shock at one point.

    ``H`` and ``rbar`` are only needed for the coordinate shock speed.
    """

    rho: float
    p: float
    rhobar: float
    pbar: float
    N: float
    H: Optional[float] = None
    rbar: Optional[float] = None

    @classmethod
    def from_frw(cls, state: FRWState, rbar: float, rhobar: float, pbar: float) -> "MatchedState":
        return cls(
            rho=state.rho, p=state.p, rhobar=rhobar, pbar=pbar,
            N=(state.H * rbar) ** 2, H=state.H, rbar=rbar,
        )


@dataclass(frozen=True)
class JumpMatrix:
    T00: float
    T01: float
    T10: float
    T11: float
    psi: float

    def as_array(self) -> np.ndarray:
        return np.array([[self.T00, self.T01], [self.T10, self.T11]])

    @property
    def det(self) -> float:
        return self.T00 * self.T11 - self.T01 * self.T10

    @property
    def norm(self) -> float:
        return max(abs(self.T00), abs(self.T01), abs(self.T10), abs(self.T11))


@dataclass(frozen=True)
class ShockNormal:
    n0: float
    n1: float

    @property
    def norm(self) -> float:
        return max(abs(self.n0), abs(self.n1))


@dataclass(frozen=True)
class RHResidual:
    det: float
    contraction0: float
    contraction1: float
    T_norm: float
    n_norm: float

    @property
    def rel_det(self) -> float:
        return abs(self.det) / self.T_norm**2

    @property
    def rel_contraction0(self) -> float:
        return abs(self.contraction0) / (self.T_norm * self.n_norm)

    @property
    def rel_contraction1(self) -> float:
        return abs(self.contraction1) / (self.T_norm * self.n_norm)


def pbar_from_constraint(rho: float, p: float, rhobar: float, N: float) -> float:
    """TOV pressure fixed by the single conservation constraint."""
    if rho == rhobar:
        raise ValueError("constraint is singular at rho == rhobar")
    if not N > 0.0:
        raise ValueError("N must be positive")
    c = (rhobar + p) / (rho - rhobar) / N
    den = 1.0 + c
    if den == 0.0:
        raise ValueError("vanishing denominator in the conservation constraint")
    return (p - c * rho) / den


def rhobar_from_constraint(rho: float, p: float, pbar: float, N: float) -> float:
    """Inverse form of the constraint: TOV density given TOV pressure."""
    den = (rho + pbar) + (p - pbar) * N
    if den == 0.0:
        raise ValueError("vanishing denominator in the conservation constraint")
    return (-(rho + pbar) * p + (p - pbar) * N * rho) / den


def v_from_u(u: float, sigma: float, N: float) -> float:
    """rhobar/rho in terms of u = pbar/rho, sigma = p/rho and N."""
    den = (1.0 + u) + (sigma - u) * N
    if den == 0.0:
        raise ValueError("vanishing denominator in the conservation constraint")
    return (-sigma * (1.0 + u) + (sigma - u) * N) / den


def jump_matrix(state: MatchedState, psi: float) -> JumpMatrix:
    """[T]^{mu nu} = T_FRW - T_TOV on the shock."""
    if not state.N > 1.0:
        raise ValueError("jump matrix is defined inside the black hole only (N > 1)")
    if psi == 0.0:
        raise ValueError("psi must be nonzero")
    rho, p, rhobar, pbar, N = state.rho, state.p, state.rhobar, state.pbar, state.N
    off = psi * math.sqrt(N) * (rho + p)
    return JumpMatrix(
        T00=(rho + p) * N + (rhobar + p) * (1.0 - N),
        T01=off,
        T10=off,
        T11=psi * psi * ((rho + pbar) + (p - pbar) * N),
        psi=psi,
    )


def shock_normal(state: MatchedState, psi: float) -> ShockNormal:
    """Covariant normal (n_rbar, n_tbar) of the shock surface."""
    den = state.rho + state.pbar
    if den == 0.0:
        raise ValueError("shock normal is singular at rho + pbar == 0")
    N = state.N
    return ShockNormal(
        n0=psi * (N * (state.p - state.pbar) / den + 1.0),
        n1=-math.sqrt(N) * (state.rho + state.p) / den,
    )


def coordinate_jacobian(N: float, R: float, psi: float) -> np.ndarray:
    """d(rbar, tbar)/d(t, r) on the shock for k = 0 (rows: rbar, tbar)."""
    sN = math.sqrt(N)
    return np.array([[sN, R], [psi, psi * R * sN]])


def normal_from_jacobian(N: float, R: float, psi: float, rdot: float) -> ShockNormal:
    """Transform the FRW normal (-rdot, 1) of r = r(t) into barred coordinates.

    Uses the adjugate of :func:`coordinate_jacobian`; the 1/det factor and an
    overall sign are dropped, since only the direction matters.
    """
    J = coordinate_jacobian(N, R, psi)
    adj = np.array([[J[1, 1], -J[0, 1]], [-J[1, 0], J[0, 0]]])
    n_frw = np.array([-rdot, 1.0])
    nbar = -(n_frw @ adj)
    return ShockNormal(n0=float(nbar[0]), n1=float(nbar[1]))


def rankine_hugoniot_residual(state: MatchedState, psi: float) -> RHResidual:
    """det[T] and the contractions n_mu [T]^{mu 0}, n_mu [T]^{mu 1}."""
    T = jump_matrix(state, psi)
    n = shock_normal(state, psi)
    return RHResidual(
        det=T.det,
        contraction0=n.n0 * T.T00 + n.n1 * T.T10,
        contraction1=n.n0 * T.T01 + n.n1 * T.T11,
        T_norm=T.norm,
        n_norm=n.norm,
    )


def noncharacteristic_check(state: MatchedState, rtol: float = 1e-12) -> bool:
    """True unless A = 1 - N equals (rho + p)/(p - pbar)."""
    A = 1.0 - state.N
    if state.p == state.pbar:
        return True
    ratio = (state.rho + state.p) / (state.p - state.pbar)
    return not math.isclose(A, ratio, rel_tol=rtol, abs_tol=0.0)


def shock_speed_coordinate(state: MatchedState) -> float:
    """drbar/dt: recession speed of the shock from the FRW center."""
    den = state.rho + state.pbar
    if den == 0.0:
        raise ValueError("shock speed is singular at rho + pbar == 0")
    if state.H is None or state.rbar is None:
        raise ValueError("MatchedState needs H and rbar for the coordinate speed")
    return (state.rho + state.p) / den * state.H * state.rbar


def shock_speed_fluid(u: float, sigma: float, N: float) -> float:
    """Shock speed relative to the comoving FRW fluid, s = R dr/dt."""
    if u == -1.0:
        raise ValueError("u = -1 is singular")
    return math.sqrt(N) * (sigma - u) / (1.0 + u)


def psi_boundary(A: float, B: float, orientation: int = 1) -> float:
    """Boundary value of the FRW integrating factor on the shock.

    ``orientation=+1`` makes tbar increase with FRW time t along fixed r.
    """
    AB = A * B
    if not AB > 0.0:
        raise ValueError(f"A*B must be positive on the shock, got {AB!r}")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    return orientation / math.sqrt(AB)
