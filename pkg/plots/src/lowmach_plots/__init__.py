"""Turn lowmach CSV outputs into figures.

The plotter is a pure file transform: it validates that the input CSV
carries one of the solver's documented headers, then renders it.  It never
recomputes physics, so the solver stays the single source of numerical
truth.
"""

__version__ = "0.1.0"

from .figures import plot_contour2d, plot_profile1d, plot_timeseries
from .io import FormatError

__all__ = ["FormatError", "plot_contour2d", "plot_profile1d", "plot_timeseries"]
