"""Initial conditions and metadata of the benchmark problems."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import ModelParams


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    dim: int
    domain: tuple
    default_params: ModelParams
    default_t_final: float
    ic: Callable


def standard_periodic(eps) -> ProblemSpec:
    """Smooth well-prepared wave: density constant to O(eps^2)."""

    def ic(x):
        rho = 1.0 + eps**2 * np.sin(2.0 * np.pi * x)
        u = 1.0 + eps * np.sin(2.0 * np.pi * x)
        return rho, rho * u

    return ProblemSpec(
        id="standard_periodic",
        dim=1,
        domain=((0.0, 1.0),),
        default_params=ModelParams(kappa=1.0, gamma=2.0, eps=eps),
        default_t_final=5.0,
        ic=ic,
    )


def colliding_acoustic(eps) -> ProblemSpec:
    """Two acoustic pulses running into each other; not well-prepared."""
    sqrt_g = math.sqrt(1.4)

    def ic(x):
        hump = 1.0 - np.cos(2.0 * np.pi * x)
        rho = 0.955 + 0.5 * eps * hump
        u = -np.sign(x) * sqrt_g * hump
        return rho, rho * u

    return ProblemSpec(
        id="colliding_acoustic",
        dim=1,
        domain=((-1.0, 1.0),),
        default_params=ModelParams(kappa=1.0, gamma=1.4, eps=eps),
        default_t_final=0.08,
        ic=ic,
    )


def riemann(eps) -> ProblemSpec:
    """Four-state periodic Riemann data with O(eps^2) jumps.

    Intervals are half-open towards the right: a point sitting exactly on a
    breakpoint takes the value of the branch to its right (measure-zero
    convention; cell centers of the grids used never hit a breakpoint).
    """

    def ic(x):
        x = np.asarray(x, dtype=float)
        conds = [x < 0.2, x < 0.3, x < 0.7, x < 0.8]
        rho = np.select(conds, [1.0, 1.0 + eps**2, 1.0, 1.0 - eps**2], default=1.0)
        mom = np.select(
            conds,
            [1.0 - eps**2 / 2.0, 1.0, 1.0 + eps**2 / 2.0, 1.0],
            default=1.0 - eps**2 / 2.0,
        )
        return rho, mom

    return ProblemSpec(
        id="riemann",
        dim=1,
        domain=((0.0, 1.0),),
        default_params=ModelParams(kappa=1.0, gamma=2.0, eps=eps),
        default_t_final=0.05,
        ic=ic,
    )


GRESHO_RADIUS = 0.4
GRESHO_U1 = 0.1


def gresho(eps) -> ProblemSpec:
    """Rotating vortex in angular-velocity/pressure balance around (0.5, 0.5).

    The azimuthal velocity is applied through u_theta/r, whose inner branch
    equals the constant 2/R, so the center is a removable singularity.  The
    density follows from p = rho^gamma expanded to second order in eps.
    """
    R = GRESHO_RADIUS
    gamma = 1.4

    def ic(x1, x2):
        dx1 = x1 - 0.5
        dx2 = x2 - 0.5
        r = np.sqrt(dx1**2 + dx2**2)
        inner = r < R / 2.0
        middle = (r >= R / 2.0) & (r < R)
        r_safe = np.where(r > 0.0, r, 1.0)

        utheta_over_r = np.select(
            [inner, middle], [2.0 / R, 2.0 * (1.0 / r_safe - 1.0 / R)], default=0.0
        )
        u1 = GRESHO_U1 - dx2 * utheta_over_r
        u2 = dx1 * utheta_over_r

        p2 = np.select(
            [inner, middle],
            [
                2.0 * (r / R) ** 2 + 2.0 - math.log(16.0),
                2.0 * (r / R) ** 2 - 8.0 * (r / R) + 4.0 * np.log(np.where(middle, r_safe / R, 1.0)) + 6.0,
            ],
            default=0.0,
        )
        rho = 1.0 + eps**2 * p2 / gamma
        return rho, rho * u1, rho * u2

    return ProblemSpec(
        id="gresho",
        dim=2,
        domain=((0.0, 1.0), (0.0, 1.0)),
        default_params=ModelParams(kappa=1.0, gamma=gamma, eps=eps),
        default_t_final=GRESHO_RADIUS * math.pi,
        ic=ic,
    )


def travelling_vortex(eps) -> ProblemSpec:
    """Compactly supported vortex advected by a (0.6, 0) background wind."""

    def k_profile(q):
        return (
            2.0 * np.cos(q)
            + 2.0 * q * np.sin(q)
            + 0.125 * np.cos(2.0 * q)
            + 0.25 * q * np.sin(2.0 * q)
            + 0.75 * q**2
        )

    k_pi = k_profile(np.pi)

    def ic(x1, x2):
        r = 4.0 * np.pi * np.sqrt((x1 - 0.5) ** 2 + (x2 - 0.5) ** 2)
        d = (r < np.pi).astype(float)
        rho = 110.0 + eps**2 * (1.5 / (4.0 * np.pi)) ** 2 * d * (k_profile(r) - k_pi)
        swirl = 1.5 * (1.0 + np.cos(r)) * d
        u1 = 0.6 + swirl * (0.5 - x2)
        u2 = swirl * (x1 - 0.5)
        return rho, rho * u1, rho * u2

    return ProblemSpec(
        id="travelling_vortex",
        dim=2,
        domain=((0.0, 1.0), (0.0, 1.0)),
        default_params=ModelParams(kappa=1.0, gamma=1.4, eps=eps),
        default_t_final=1.0 / 0.6,
        ic=ic,
    )


PROBLEMS = {
    "standard_periodic": standard_periodic,
    "colliding_acoustic": colliding_acoustic,
    "riemann": riemann,
    "gresho": gresho,
    "travelling_vortex": travelling_vortex,
}


def get_problem(name, eps) -> ProblemSpec:
    try:
        builder = PROBLEMS[name]
    except KeyError:
        raise KeyError(f"unknown problem '{name}', expected one of {sorted(PROBLEMS)}") from None
    return builder(eps)
