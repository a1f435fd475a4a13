"""Finite-volume IMEX solver for the non-dimensional barotropic Euler equations.

The package couples a semi-implicit (IMEX Runge-Kutta) time discretisation,
in which the acoustic terms are solved through a linearised periodic
Helmholtz problem, with three interchangeable space discretisation
strategies (central, upwind-mass, and entropy-conservative/entropy-stable
convective fluxes).  Time-step restrictions depend only on the material
velocity, so the solver remains usable for Mach-proportional parameters
``eps`` all the way down to 1e-6.
"""

__version__ = "0.1.0"

from .grid import Field, PeriodicGrid
from .imex import DoubleTableau, ars111, ars222
from .model import CellState, ModelParams
from .spatial import DiscretisationType
from .stepper import BlowUpError, StepControls

__all__ = [
    "BlowUpError",
    "CellState",
    "DiscretisationType",
    "DoubleTableau",
    "Field",
    "ModelParams",
    "PeriodicGrid",
    "StepControls",
    "ars111",
    "ars222",
    "__version__",
]
