"""Uniform periodic meshes in 1D/2D and piecewise-constant fields."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform Cartesian mesh with periodic wrap in every direction.

    ``n`` holds the cell count per direction and ``domain`` the half-open
    interval [a, b) per direction.  ``face_measure[k]`` is the measure of a
    face normal to direction k (1 in 1D, the transverse cell width in 2D)
    and ``d_sigma[k]`` the center-to-center distance across such a face.
    """

    n: tuple
    domain: tuple
    dx: tuple = dc_field(init=False)

    def __post_init__(self):
        if len(self.n) not in (1, 2) or len(self.n) != len(self.domain):
            raise ValueError("grid must be 1D or 2D with matching domain")
        if any(nk < 1 for nk in self.n):
            raise ValueError("cell counts must be positive")
        dx = tuple((b - a) / nk for (a, b), nk in zip(self.domain, self.n))
        if any(d <= 0 for d in dx):
            raise ValueError("domain intervals must have positive length")
        object.__setattr__(self, "dx", dx)

    @classmethod
    def interval(cls, n, a=0.0, b=1.0):
        return cls(n=(n,), domain=((a, b),))

    @classmethod
    def box(cls, n1, n2, domain=((0.0, 1.0), (0.0, 1.0))):
        return cls(n=(n1, n2), domain=tuple(tuple(d) for d in domain))

    @property
    def dim(self):
        return len(self.n)

    @property
    def shape(self):
        return self.n

    @property
    def num_cells(self):
        return int(np.prod(self.n))

    @property
    def cell_measure(self):
        return float(np.prod(self.dx))

    @property
    def face_measure(self):
        if self.dim == 1:
            return (1.0,)
        return (self.dx[1], self.dx[0])

    @property
    def d_sigma(self):
        return self.dx

    def axis_centers(self, k):
        a, _ = self.domain[k]
        return a + (np.arange(self.n[k]) + 0.5) * self.dx[k]

    def cell_centers(self):
        """Coordinate arrays of cell centers, shaped like the cell data."""
        axes = [self.axis_centers(k) for k in range(self.dim)]
        if self.dim == 1:
            return (axes[0],)
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def cell_face_vectors(self):
        """(|sigma|, outward normal) pairs of one cell's faces."""
        out = []
        for k in range(self.dim):
            normal = np.zeros(self.dim)
            normal[k] = 1.0
            out.append((self.face_measure[k], normal.copy()))
            out.append((self.face_measure[k], -normal))
        return out


@dataclass
class Field:
    """Piecewise-constant density and momentum on a periodic grid.

    ``rho`` has the grid's cell shape; ``mom`` has one leading component
    axis (shape ``(dim,) + grid.shape``).  Cell data are stored with x1 as
    axis 0; serialization flattens with x1 fastest.
    """

    grid: PeriodicGrid
    rho: np.ndarray
    mom: np.ndarray

    def __post_init__(self):
        self.rho = np.ascontiguousarray(self.rho, dtype=float)
        self.mom = np.ascontiguousarray(self.mom, dtype=float)
        if self.rho.shape != self.grid.shape:
            raise ValueError(f"rho shape {self.rho.shape} != grid shape {self.grid.shape}")
        if self.mom.shape != (self.grid.dim,) + self.grid.shape:
            raise ValueError(f"momentum shape {self.mom.shape} inconsistent with grid")

    def velocity(self):
        return self.mom / self.rho

    def copy(self):
        return Field(self.grid, self.rho.copy(), self.mom.copy())


def face_average(phi_K, phi_L):
    """Arithmetic face mean (phi_K + phi_L) / 2."""
    return 0.5 * (phi_K + phi_L)


def face_jump(phi_K, phi_L):
    """Face jump phi_L - phi_K, oriented with the normal from K into L."""
    return phi_L - phi_K


def integrate(values, grid: PeriodicGrid) -> float:
    """Cell integral sum_K |K| * value_K."""
    values = np.asarray(values)
    if values.shape != grid.shape:
        raise ValueError("values shape does not match grid")
    return float(grid.cell_measure * values.sum())


def sample_initial_condition(ic, grid: PeriodicGrid) -> Field:
    """Build a Field by evaluating a pointwise IC at the cell centers.

    ``ic`` maps the center coordinate arrays to ``(rho, m1[, m2])``.
    """
    coords = grid.cell_centers()
    out = ic(*coords)
    rho = np.broadcast_to(np.asarray(out[0], dtype=float), grid.shape).copy()
    if np.any(rho <= 0) or not np.all(np.isfinite(rho)):
        raise ValueError("initial condition produced non-positive density")
    mom = np.stack(
        [np.broadcast_to(np.asarray(m, dtype=float), grid.shape) for m in out[1:]]
    )
    if mom.shape[0] != grid.dim:
        raise ValueError("initial condition momentum components do not match grid dim")
    return Field(grid, rho, mom)
