"""TOV equations inside the black hole (A = 1 - N < 0, rbar timelike).

The metric coefficient B is obtained by quadrature in N. The printed integrand
adds N/rbar (1/length) to kappa*rhobar (1/length^2); ``variant`` selects either
the literal form or the dimensionally consistent kappa*rhobar*rbar.
"""

from __future__ import annotations

from typing import Literal, Sequence

import numpy as np

from frwshock.frw_background import KAPPA

BVariant = Literal["paper-literal", "dimensional"]
B_VARIANTS: tuple[str, ...] = ("paper-literal", "dimensional")
HORIZON_EPS = 1e-6


def tov_rhs(rbar: float, pbar: float, N: float, rhobar: float) -> tuple[float, float]:
    """(dpbar/drbar, dN/drbar) of the TOV system in the N = 2M/rbar form."""
    if not rbar > 0.0:
        raise ValueError("rbar must be positive")
    if N == 1.0:
        raise ValueError("N = 1 is the horizon, where the system is singular")
    dN = -(N / rbar + KAPPA * pbar * rbar)
    dp = 0.5 * (pbar + rhobar) * dN / (N - 1.0)
    return dp, dN


def tov_rhs_A_form(rbar: float, pbar: float, A: float, rhobar: float) -> tuple[float, float]:
    """(dpbar/drbar, dA/drbar) with A = 1 - 2M/rbar."""
    if not rbar > 0.0:
        raise ValueError("rbar must be positive")
    if A == 0.0:
        raise ValueError("A = 0 is the horizon, where the system is singular")
    dA = (1.0 - A) / rbar + KAPPA * pbar * rbar
    dp = 0.5 * (pbar + rhobar) * dA / A
    return dp, dA


def b_integrand(N, rbar, rhobar, variant: BVariant = "dimensional"):
    """Integrand g(N) with d(ln B)/dN = -g(N)."""
    N = np.asarray(N, dtype=float)
    rbar = np.asarray(rbar, dtype=float)
    rhobar = np.asarray(rhobar, dtype=float)
    if variant == "dimensional":
        matter = KAPPA * rhobar * rbar
    elif variant == "paper-literal":
        matter = KAPPA * rhobar
    else:
        raise ValueError(f"unknown B variant {variant!r}; expected one of {B_VARIANTS}")
    return (N / rbar + matter) / (N - 1.0)


def metric_log_B(
    samples: Sequence[tuple[float, float, float]],
    B0: float = 1.0,
    variant: BVariant = "dimensional",
    horizon_eps: float = HORIZON_EPS,
) -> np.ndarray:
    """ln B at each (N, rbar, rhobar) sample, with B = B0 at the first sample.

    Composite trapezoid on the given grid; no re-gridding, so the caller
    controls resolution.
    """
    if not B0 > 0.0:
        raise ValueError("B0 must be positive")
    arr = np.asarray(samples, dtype=float).reshape(-1, 3)
    N, rbar, rhobar = arr.T
    if np.any(N <= 1.0 + horizon_eps):
        raise ValueError(
            f"samples reach N <= 1 + {horizon_eps:g}; B is not integrated across the horizon"
        )
    if len(N) > 1:
        dN = np.diff(N)
        if not (np.all(dN > 0) or np.all(dN < 0)):
            raise ValueError("samples must be strictly monotone in N")
    g = b_integrand(N, rbar, rhobar, variant)
    increments = 0.5 * (g[1:] + g[:-1]) * np.diff(N)
    return np.log(B0) - np.concatenate(([0.0], np.cumsum(increments)))


def metric_B(
    samples: Sequence[tuple[float, float, float]],
    B0: float = 1.0,
    variant: BVariant = "dimensional",
    horizon_eps: float = HORIZON_EPS,
) -> np.ndarray:
    return np.exp(metric_log_B(samples, B0, variant, horizon_eps))
