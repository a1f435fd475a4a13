"""Pressure law, entropy pair, entropy variables and wave speeds.

All quantities refer to the non-dimensional barotropic system with pressure
``p(rho) = kappa * rho**gamma`` and a ``1/eps**2`` factor in front of the
pressure gradient.  Functions accept scalars or numpy arrays for the density
argument and are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """Pressure-law coefficients and the Mach-proportional parameter."""

    kappa: float
    gamma: float
    eps: float

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.gamma <= 1:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")


@dataclass(frozen=True)
class CellState:
    """Conserved variables of a single cell: density and momentum."""

    rho: float
    mom: tuple

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"density must be positive, got {self.rho}")
        if len(self.mom) not in (1, 2):
            raise ValueError("momentum must have 1 or 2 components")

    @property
    def velocity(self):
        return tuple(m / self.rho for m in self.mom)


@dataclass(frozen=True)
class EntropyQuantities:
    """Entropy, entropy flux and entropy variables of one state."""

    eta: float
    omega: tuple
    v: tuple


def pressure(rho, params: ModelParams):
    """Evaluate p(rho) = kappa * rho**gamma; rho must be positive."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("pressure requires positive density")
    p = params.kappa * rho**params.gamma
    return float(p) if p.ndim == 0 else p


def pressure_derivative(rho, params: ModelParams):
    """Evaluate p'(rho) = kappa * gamma * rho**(gamma-1); rho must be positive."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("pressure_derivative requires positive density")
    dp = params.kappa * params.gamma * rho ** (params.gamma - 1.0)
    return float(dp) if dp.ndim == 0 else dp


def entropy_quantities(state: CellState, params: ModelParams) -> EntropyQuantities:
    """Entropy eta, entropy flux omega and entropy variables v of one cell.

    eta = (1/2) rho |u|^2 + p / (eps^2 (gamma-1))
    omega_k = u_k (eta + p / eps^2)
    v = [-(1/2)|u|^2 + kappa*gamma/(eps^2 (gamma-1)) * rho^(gamma-1), u_1, ..., u_d]
    """
    u = state.velocity
    usq = sum(uk * uk for uk in u)
    p = pressure(state.rho, params)
    eps2 = params.eps**2
    eta = 0.5 * state.rho * usq + p / (eps2 * (params.gamma - 1.0))
    omega = tuple(uk * (eta + p / eps2) for uk in u)
    v0 = -0.5 * usq + (
        params.kappa * params.gamma / (eps2 * (params.gamma - 1.0))
    ) * state.rho ** (params.gamma - 1.0)
    return EntropyQuantities(eta=eta, omega=omega, v=(v0, *u))


def max_wave_speed(field, params: ModelParams = None) -> float:
    """Largest material speed over a field, sum of |u_k| per cell.

    The acoustic speed c/eps is excluded: the acoustics are integrated
    implicitly, so only the explicitly treated convective part restricts
    the time step.
    """
    if field.rho.size == 0:
        raise ValueError("max_wave_speed of an empty field")
    if np.any(field.rho <= 0):
        raise ValueError("max_wave_speed requires positive density")
    speed = np.zeros_like(field.rho)
    for k in range(field.grid.dim):
        speed += np.abs(field.mom[k] / field.rho)
    return float(speed.max())
