"""The three figure kinds: time series, 1D profile, 2D filled contour."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import (
    DIAGNOSTICS_HEADER,
    KNOWN_2D_HEADERS,
    PROFILE_HEADER,
    FormatError,
    load_csv,
    reshape_structured_2d,
)

# fixed 1200 x 900 px canvas so identical inputs give identical images
FIGSIZE = (12.0, 9.0)
DPI = 100


def _new_axes():
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    return fig, ax


def _finish(fig, out_path):
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)
    return out_path


def plot_timeseries(csv_path, columns, out_path):
    """Line plot of diagnostics columns against time."""
    _, cols = load_csv(csv_path, (DIAGNOSTICS_HEADER,))
    missing = [c for c in columns if c not in cols or c == "t"]
    if missing:
        raise FormatError(f"{csv_path}: no such diagnostics column(s): {', '.join(missing)}")
    fig, ax = _new_axes()
    for name in columns:
        ax.plot(cols["t"], cols[name], label=name)
    ax.set_xlabel("t")
    ax.legend()
    ax.grid(True, alpha=0.3)
    return _finish(fig, out_path)


def plot_profile1d(csv_path, variable, out_path):
    """Variable against x from a 1D snapshot."""
    _, cols = load_csv(csv_path, (PROFILE_HEADER,))
    if variable not in cols or variable == "x":
        raise FormatError(f"{csv_path}: no such profile variable: {variable}")
    fig, ax = _new_axes()
    ax.plot(cols["x"], cols[variable])
    ax.set_xlabel("x")
    ax.set_ylabel(variable)
    ax.grid(True, alpha=0.3)
    return _finish(fig, out_path)


def plot_contour2d(csv_path, variable, out_path, levels=30):
    """Filled contour of one variable from a 2D snapshot or derived field."""
    _, cols = load_csv(csv_path, KNOWN_2D_HEADERS)
    x1, x2, fields = reshape_structured_2d(cols)
    if variable not in fields:
        raise FormatError(
            f"{csv_path}: no such field variable: {variable} "
            f"(available: {', '.join(sorted(fields))})"
        )
    fig, ax = _new_axes()
    contour = ax.contourf(x1, x2, fields[variable].T, levels=levels)
    fig.colorbar(contour, ax=ax, label=variable)
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_aspect("equal")
    return _finish(fig, out_path)
