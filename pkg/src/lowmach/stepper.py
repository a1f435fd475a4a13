"""Fully discrete time advancement.

One step solves the linearised acoustic subsystem implicitly (a periodic
Helmholtz problem obtained by substituting the momentum update into the
implicit mass flux) and the convective subsystem explicitly.  The stage
form follows a double Butcher tableau whose last stage is the update
(globally stiffly accurate), so no extra combination pass is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .diagnostics import global_energies
from .elliptic import HelmholtzOperator, solve_helmholtz
from .grid import Field, PeriodicGrid
from .imex import DoubleTableau
from .model import ModelParams, max_wave_speed, pressure, pressure_derivative
from .spatial import (
    DiscretisationType,
    central_gradient_of,
    convective_divergence,
    double_divergence,
    mass_divergence,
    pressure_laplacian,
)


class BlowUpError(RuntimeError):
    """Raised when a step produces non-finite values or non-positive density."""

    def __init__(self, message, t=None, step_index=None, last_field=None):
        super().__init__(message)
        self.t = t
        self.step_index = step_index
        self.last_field = last_field


@dataclass(frozen=True)
class StepControls:
    """CFL number, horizon and pressure-linearisation reference density."""

    cfl: float
    t_final: float
    linearisation_rho0: float
    dt_cap: Optional[float] = None
    helmholtz_tol: float = 1e-12
    nonlinear_pressure: bool = False

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        if self.t_final < 0:
            raise ValueError("t_final must be nonnegative")
        if self.linearisation_rho0 <= 0:
            raise ValueError("linearisation_rho0 must be positive")
        if self.dt_cap is not None and self.dt_cap <= 0:
            raise ValueError("dt_cap must be positive")


def compute_dt(field: Field, controls: StepControls, grid: PeriodicGrid, t=0.0):
    """CFL time step from the material speed, capped and clipped to t_final."""
    speed = max_wave_speed(field)
    if speed == 0.0:
        if controls.dt_cap is None:
            raise ValueError("zero wave speed everywhere; set dt_cap to advance in time")
        dt = controls.dt_cap
    else:
        dt = controls.cfl * min(grid.dx) / speed
        if controls.dt_cap is not None:
            dt = min(dt, controls.dt_cap)
    remaining = controls.t_final - t
    if remaining <= 0:
        raise ValueError("compute_dt called at or past t_final")
    return min(dt, remaining)


def linearised_pressure(rho_values, controls: StepControls, params: ModelParams):
    """p(rho0) + (rho - rho0) p'(rho0), the pressure used inside implicit terms."""
    rho0 = controls.linearisation_rho0
    return pressure(rho0, params) + (rho_values - rho0) * pressure_derivative(rho0, params)


def _stage_pressure(rho_values, controls, params):
    if controls.nonlinear_pressure:
        return params.kappa * rho_values**params.gamma
    return linearised_pressure(rho_values, controls, params)


def _check_state(rho, mom):
    if not (np.all(np.isfinite(rho)) and np.all(np.isfinite(mom))):
        raise BlowUpError("non-finite values in updated state")
    if np.any(rho <= 0.0):
        raise BlowUpError(f"non-positive density (min {rho.min():.3e})")


def first_order_step(field: Field, params: ModelParams, controls: StepControls,
                     disc: DiscretisationType, grid: PeriodicGrid, dt: float) -> Field:
    """One step of the first-order semi-implicit scheme.

    rho^{n+1} = (I - (dt/eps)^2 p'(rho0) Lap)^{-1}
                [rho^n - dt D(rho u)^n + dt^2 D^2(rho u u)^n]
    m^{n+1}   = m^n - dt D_conv(rho u u)^n - (dt/eps^2) grad p(rho^{n+1})
    """
    eps = params.eps
    dp0 = pressure_derivative(controls.linearisation_rho0, params)

    rhs = field.rho - dt * mass_divergence(field, disc) + dt**2 * double_divergence(field)
    op = HelmholtzOperator(grid, (dt / eps) ** 2 * dp0)
    rho_new = solve_helmholtz(op, rhs, tol=controls.helmholtz_tol)

    p_new = _stage_pressure(rho_new, controls, params)
    mom_new = (
        field.mom
        - dt * convective_divergence(field, params, disc)
        - (dt / eps**2) * central_gradient_of(p_new, grid)
    )
    _check_state(rho_new, mom_new)
    return Field(grid, rho_new, mom_new)


class _StageData:
    """Operator evaluations of one stage, written once and then read-only."""

    __slots__ = ("rho", "mom", "mass_div", "conv_div", "double_div", "p_lap", "p_grad")

    def __init__(self, rho, mom):
        self.rho = rho
        self.mom = mom
        self.mass_div = None
        self.conv_div = None
        self.double_div = None
        self.p_lap = None
        self.p_grad = None


def imex_rk_step(field: Field, tableau: DoubleTableau, params: ModelParams,
                 controls: StepControls, disc: DiscretisationType,
                 grid: PeriodicGrid, dt: float) -> Field:
    """One step of the stage-form IMEX scheme; returns the last (GSA) stage."""
    eps = params.eps
    dp0 = pressure_derivative(controls.linearisation_rho0, params)
    a_imp, a_exp = tableau.a_imp, tableau.a_exp
    s = tableau.s

    # which stage evaluations later stages will read (stage data is written
    # once here and never recomputed, so the explicit sums are reproducible)
    need_mass = [any(a_imp[i, j] != 0.0 for i in range(j + 1, s)) for j in range(s)]
    need_conv = [any(a_exp[i, j] != 0.0 for i in range(j + 1, s)) for j in range(s)]
    need_dd = [any(a_exp[i, j] * a_imp[i, i] != 0.0 for i in range(j + 1, s)) for j in range(s)]
    need_lap = [any(a_imp[i, j] * a_imp[i, i] != 0.0 for i in range(j + 1, s)) for j in range(s)]
    need_grad = [
        a_imp[j, j] != 0.0 or any(a_imp[i, j] != 0.0 for i in range(j + 1, s))
        for j in range(s)
    ]

    mass_div_n = mass_divergence(field, disc)
    stages: list[_StageData] = []
    for i in range(s):
        aii = a_imp[i, i]

        rhs = field.rho.copy()
        if aii != 0.0:
            rhs -= dt * aii * mass_div_n
        for j in range(i):
            if a_imp[i, j] != 0.0:
                rhs -= dt * a_imp[i, j] * stages[j].mass_div
            c_dd = dt**2 * aii * a_exp[i, j]
            if c_dd != 0.0:
                rhs += c_dd * stages[j].double_div
            c_lap = (dt / eps) ** 2 * aii * a_imp[i, j]
            if c_lap != 0.0:
                rhs += c_lap * stages[j].p_lap

        if aii != 0.0:
            op = HelmholtzOperator(grid, (dt * aii / eps) ** 2 * dp0)
            rho_i = solve_helmholtz(op, rhs, tol=controls.helmholtz_tol)
        else:
            rho_i = rhs

        stage = _StageData(rho_i, field.mom.copy())
        p_i = _stage_pressure(rho_i, controls, params) if (need_grad[i] or need_lap[i]) else None
        if need_grad[i]:
            stage.p_grad = central_gradient_of(p_i, grid)
        for j in range(i):
            if a_exp[i, j] != 0.0:
                stage.mom -= dt * a_exp[i, j] * stages[j].conv_div
            if a_imp[i, j] != 0.0:
                stage.mom -= (dt / eps**2) * a_imp[i, j] * stages[j].p_grad
        if aii != 0.0:
            stage.mom -= (dt / eps**2) * aii * stage.p_grad
        _check_state(stage.rho, stage.mom)

        if need_mass[i] or need_conv[i] or need_dd[i]:
            stage_field = Field(grid, stage.rho, stage.mom)
            if need_mass[i]:
                is_copy = i == 0 and aii == 0.0
                stage.mass_div = mass_div_n if is_copy else mass_divergence(stage_field, disc)
            if need_conv[i]:
                stage.conv_div = convective_divergence(stage_field, params, disc)
            if need_dd[i]:
                stage.double_div = double_divergence(stage_field)
        if need_lap[i]:
            stage.p_lap = pressure_laplacian(p_i, grid)
        stages.append(stage)

    last = stages[-1]
    return Field(grid, last.rho, last.mom)


def run(field: Field, tableau: DoubleTableau, params: ModelParams,
        controls: StepControls, disc: DiscretisationType,
        diagnostics_sink=None, snapshot_times=(), snapshot_sink=None,
        max_steps=10_000_000):
    """Advance to t_final, recording energies each step and snapshots on request.

    Snapshots are matched to the newest completed step at or before the
    requested time.  Blow-up is re-raised with the step index and the last
    valid state attached.
    """
    grid = field.grid
    t = 0.0
    step_index = 0
    pending = sorted(snapshot_times)
    rows = [global_energies(field, params, grid, t=0.0)]
    if diagnostics_sink is not None:
        diagnostics_sink(rows[0])

    eps_t = 1e-13 * max(1.0, controls.t_final)
    while controls.t_final - t > eps_t:
        if step_index >= max_steps:
            raise RuntimeError(f"exceeded {max_steps} steps before reaching t_final")
        dt = compute_dt(field, controls, grid, t=t)
        while pending and t <= pending[0] < t + dt - eps_t:
            if snapshot_sink is not None:
                snapshot_sink(pending[0], t, field)
            pending.pop(0)
        try:
            field = imex_rk_step(field, tableau, params, controls, disc, grid, dt)
        except BlowUpError as err:
            raise BlowUpError(
                f"blow-up at step {step_index + 1}, t = {t + dt:.6g}: {err}",
                t=t + dt, step_index=step_index + 1, last_field=field,
            ) from None
        t += dt
        step_index += 1
        row = global_energies(field, params, grid, t=t)
        rows.append(row)
        if diagnostics_sink is not None:
            diagnostics_sink(row)

    for ts in pending:
        if snapshot_sink is not None:
            snapshot_sink(ts, t, field)
    return field, rows
