"""CSV loading with strict header validation against the solver's formats."""

import csv

import numpy as np

DIAGNOSTICS_HEADER = ("t", "entropy", "kinetic_energy", "potential_energy")
PROFILE_HEADER = ("x", "rho", "mom1")
SNAPSHOT_2D_HEADER = ("x1", "x2", "rho", "mom1", "mom2")
MACH_RATIO_HEADER = ("x1", "x2", "mach_ratio")

KNOWN_2D_HEADERS = (SNAPSHOT_2D_HEADER, MACH_RATIO_HEADER)


class FormatError(ValueError):
    """The CSV does not match any format the solver emits."""


def load_csv(path, expected_headers):
    """Read a CSV whose header matches one of `expected_headers` exactly.

    Returns (header, columns) with columns as a dict of float arrays.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise FormatError(f"{path}: file is empty") from None
        if header not in expected_headers:
            raise FormatError(
                f"{path}: header {','.join(header)!r} is not a recognised solver "
                f"format (expected one of: "
                f"{'; '.join(','.join(h) for h in expected_headers)})"
            )
        rows = list(reader)
    if not rows:
        raise FormatError(f"{path}: no data rows after the header")
    try:
        data = np.array(rows, dtype=float)
    except ValueError as err:
        raise FormatError(f"{path}: non-numeric data: {err}") from None
    if data.shape[1] != len(header):
        raise FormatError(f"{path}: ragged rows")
    return header, {name: data[:, k] for k, name in enumerate(header)}


def reshape_structured_2d(cols):
    """Arrange flat (x1-fastest) 2D cell data into (n1, n2) arrays.

    Raises FormatError if the points do not form a complete tensor grid.
    """
    x1 = cols["x1"]
    x2 = cols["x2"]
    x1_vals = np.unique(x1)
    x2_vals = np.unique(x2)
    n1, n2 = len(x1_vals), len(x2_vals)
    if n1 * n2 != len(x1):
        raise FormatError(
            f"grid is ragged: {len(x1)} points cannot tile {n1} x {n2} cells"
        )
    expect_x1 = np.tile(x1_vals, n2)
    expect_x2 = np.repeat(x2_vals, n1)
    if not (np.array_equal(x1, expect_x1) and np.array_equal(x2, expect_x2)):
        raise FormatError("grid points are not in x1-fastest tensor order")
    out = {}
    for name, values in cols.items():
        if name in ("x1", "x2"):
            continue
        out[name] = values.reshape(n2, n1).T  # [i1, i2]
    return x1_vals, x2_vals, out
