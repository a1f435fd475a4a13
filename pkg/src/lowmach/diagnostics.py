"""Global energy series, Mach-ratio field, L2 errors and EOC tables."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Field, integrate
from .model import ModelParams, pressure


@dataclass(frozen=True)
class DiagnosticsRow:
    t: float
    entropy: float
    ke: float
    pe: float


@dataclass(frozen=True)
class EocRow:
    n: int
    dx: float
    errors: dict
    eocs: dict


@dataclass(frozen=True)
class EocTable:
    variables: tuple
    rows: list


def global_energies(field: Field, params: ModelParams, grid=None, t=0.0) -> DiagnosticsRow:
    """Discrete kinetic/potential energy sums; entropy is their total."""
    grid = grid or field.grid
    u = field.velocity()
    usq = np.zeros_like(field.rho)
    for k in range(grid.dim):
        usq += u[k] ** 2
    ke = integrate(0.5 * field.rho * usq, grid)
    p = pressure(field.rho, params)
    pe = integrate(p / (params.eps**2 * (params.gamma - 1.0)), grid)
    return DiagnosticsRow(t=t, entropy=ke + pe, ke=ke, pe=pe)


def gresho_diagnostics(field: Field, params: ModelParams, background_u1: float):
    """Background-subtracted, density-free KE integral and Mach-ratio field.

    This KE variant drops the rho weight and removes the translation
    velocity, so the background state maps to exactly zero.
    """
    u = field.velocity()
    du1 = u[0] - background_u1
    u2sq = u[1] ** 2 if field.grid.dim == 2 else 0.0
    perturbation = du1**2 + u2sq
    ke_variant = integrate(0.5 * perturbation, field.grid)
    p = pressure(field.rho, params)
    mach_ratio = np.sqrt(perturbation / (params.gamma * p / field.rho))
    return ke_variant, mach_ratio


def _block_average(values, factors):
    if len(factors) == 1:
        (f1,) = factors
        return values.reshape(values.shape[0] // f1, f1).mean(axis=1)
    f1, f2 = factors
    n1, n2 = values.shape
    return values.reshape(n1 // f1, f1, n2 // f2, f2).mean(axis=(1, 3))


def _variable(field: Field, name):
    if name == "rho":
        return field.rho
    if name in ("u1", "u2"):
        k = int(name[1]) - 1
        if k >= field.grid.dim:
            raise ValueError(f"variable {name} not available on a {field.grid.dim}D field")
        return field.mom[k] / field.rho
    raise ValueError(f"unknown variable '{name}'")


def l2_error(coarse: Field, reference: Field, variables=("rho", "u1")):
    """Cell-weighted L2 errors against a block-averaged reference field.

    The reference grid must be a per-direction integer refinement of the
    coarse grid; the reference is restricted by block averaging, which
    preserves means exactly.
    """
    cg, rg = coarse.grid, reference.grid
    if cg.dim != rg.dim or cg.domain != rg.domain:
        raise ValueError("coarse and reference grids live on different domains")
    factors = []
    for k in range(cg.dim):
        if rg.n[k] % cg.n[k] != 0:
            raise ValueError(
                f"reference grid {rg.n} is not an integer refinement of {cg.n}"
            )
        factors.append(rg.n[k] // cg.n[k])
    out = {}
    for name in variables:
        restricted = _block_average(_variable(reference, name), factors)
        diff = _variable(coarse, name) - restricted
        out[name] = math.sqrt(integrate(diff**2, cg))
    return out


def compute_eoc(errors):
    """Log-ratio convergence orders from (dx, error) pairs.

    dx must decrease strictly; the first entry and any pair touching a
    zero error get no order (None).
    """
    if len(errors) < 2:
        raise ValueError("need at least two (dx, error) rows")
    dxs = [dx for dx, _ in errors]
    if any(b >= a for a, b in zip(dxs, dxs[1:])):
        raise ValueError("dx values must decrease strictly")
    eocs = [None]
    for (dx0, e0), (dx1, e1) in zip(errors, errors[1:]):
        if e0 <= 0.0 or e1 <= 0.0:
            eocs.append(None)
        else:
            eocs.append(math.log(e0 / e1) / math.log(dx0 / dx1))
    return eocs


def make_eoc_table(ns, dxs, errors_by_variable) -> EocTable:
    """Assemble per-variable errors and orders into one table."""
    variables = tuple(errors_by_variable)
    eocs_by_variable = {}
    for name, errs in errors_by_variable.items():
        if len(errs) >= 2:
            eocs_by_variable[name] = compute_eoc(list(zip(dxs, errs)))
        else:
            eocs_by_variable[name] = [None] * len(errs)
    rows = [
        EocRow(
            n=ns[i],
            dx=dxs[i],
            errors={v: errors_by_variable[v][i] for v in variables},
            eocs={v: eocs_by_variable[v][i] for v in variables},
        )
        for i in range(len(ns))
    ]
    return EocTable(variables=variables, rows=rows)
