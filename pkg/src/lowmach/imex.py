"""Double Butcher tableaux for IMEX Runge-Kutta schemes.

Tableaux are stored in the (s+1)-stage CK-ARS form in which the first stage
is the time-t_n state (implicit row identically zero).  Diagonal implicitness
is therefore required only of stages whose implicit row is not identically
zero; the stepper skips the linear solve whenever a_ii = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import sqrt

import numpy as np

_TOL = 1e-14


@dataclass(frozen=True)
class DoubleTableau:
    """Explicit/implicit Butcher pair (A_exp strictly lower, A_imp lower)."""

    name: str
    a_exp: np.ndarray
    a_imp: np.ndarray
    b_exp: np.ndarray
    b_imp: np.ndarray
    c_exp: np.ndarray = dc_field(init=False)
    c_imp: np.ndarray = dc_field(init=False)

    def __post_init__(self):
        for attr in ("a_exp", "a_imp", "b_exp", "b_imp"):
            object.__setattr__(self, attr, np.asarray(getattr(self, attr), dtype=float))
        object.__setattr__(self, "c_exp", self.a_exp.sum(axis=1))
        object.__setattr__(self, "c_imp", self.a_imp.sum(axis=1))

    @property
    def s(self):
        return self.a_imp.shape[0]


def validate_tableau(t: DoubleTableau):
    """Check all structural tableau invariants; returns the violations."""
    problems = []
    s = t.s
    for arr, nm in ((t.a_exp, "a_exp"), (t.a_imp, "a_imp")):
        if arr.shape != (s, s):
            problems.append(f"{nm} is not {s}x{s}")
    if np.any(np.abs(np.triu(t.a_exp)) > _TOL):
        problems.append("explicit tableau not strictly lower triangular")
    if np.any(np.abs(np.triu(t.a_imp, k=1)) > _TOL):
        problems.append("implicit tableau not lower triangular")
    for i in range(s):
        row_nonzero = np.any(np.abs(t.a_imp[i]) > _TOL)
        if row_nonzero and abs(t.a_imp[i, i]) <= _TOL:
            problems.append(f"implicit stage {i + 1} has a zero diagonal")
    # GSA: last stage coincides with the step update
    if abs(t.c_imp[-1] - 1.0) > _TOL or abs(t.c_exp[-1] - 1.0) > _TOL:
        problems.append("last abscissa is not 1")
    if np.any(np.abs(t.a_imp[-1] - t.b_imp) > _TOL):
        problems.append("GSA violated: implicit last row != b")
    if np.any(np.abs(t.a_exp[-1] - t.b_exp) > _TOL):
        problems.append("GSA violated: explicit last row != b")
    if abs(t.b_imp.sum() - 1.0) > _TOL or abs(t.b_exp.sum() - 1.0) > _TOL:
        problems.append("quadrature weights do not sum to 1")
    return problems


def ars111() -> DoubleTableau:
    """First-order ARS(1,1,1) pair: explicit Euler / implicit Euler."""
    return DoubleTableau(
        name="ars111",
        a_exp=[[0.0, 0.0], [1.0, 0.0]],
        a_imp=[[0.0, 0.0], [0.0, 1.0]],
        b_exp=[1.0, 0.0],
        b_imp=[0.0, 1.0],
    )


def ars222() -> DoubleTableau:
    """Second-order ARS(2,2,2) pair with gamma = 1 - 1/sqrt(2)."""
    g = 1.0 - 1.0 / sqrt(2.0)
    d = 1.0 - 1.0 / (2.0 * g)
    return DoubleTableau(
        name="ars222",
        a_exp=[[0.0, 0.0, 0.0], [g, 0.0, 0.0], [d, 1.0 - d, 0.0]],
        a_imp=[[0.0, 0.0, 0.0], [0.0, g, 0.0], [0.0, 1.0 - g, g]],
        b_exp=[d, 1.0 - d, 0.0],
        b_imp=[0.0, 1.0 - g, g],
    )


SCHEMES = {"ars111": ars111, "ars222": ars222}


def get_scheme(name: str) -> DoubleTableau:
    try:
        tableau = SCHEMES[name]()
    except KeyError:
        raise KeyError(f"unknown scheme '{name}', expected one of {sorted(SCHEMES)}") from None
    problems = validate_tableau(tableau)
    if problems:
        raise ValueError(f"tableau '{name}' invalid: {problems}")
    return tableau
