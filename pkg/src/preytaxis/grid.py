"""Cell-centered finite-volume mesh and zero-flux spatial operators.

A Grid is a uniform axis-aligned box mesh in 1 or 2 dimensions.  All
operators use mirror ghost cells, which makes every boundary face flux
exactly zero, so discrete integrals of divergences telescope to zero to
rounding: the discrete divergence theorem holds by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "integrate",
    "face_gradient",
    "divergence",
    "laplacian_neumann",
    "cell_gradient_sq",
    "write_snapshot",
    "read_snapshot",
]


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered mesh on a box: n cells and physical length per axis."""

    n: tuple[int, ...]
    length: tuple[float, ...]

    def __post_init__(self):
        if len(self.n) not in (1, 2) or len(self.length) != len(self.n):
            raise ValueError(f"grid must be 1-D or 2-D with matching lengths (got {self.n}, {self.length})")
        for k in self.n:
            if not (isinstance(k, int) and k >= 4):
                raise ValueError(f"each axis needs at least 4 cells (got {self.n})")
        for ell in self.length:
            if not (math.isfinite(ell) and ell > 0):
                raise ValueError(f"axis lengths must be finite and > 0 (got {self.length})")

    @staticmethod
    def uniform(dim: int, n: int, length: float) -> "Grid":
        """Convenience constructor: same cell count and extent on every axis."""
        return Grid((n,) * dim, (float(length),) * dim)

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def h(self) -> tuple[float, ...]:
        """Mesh spacing per axis."""
        return tuple(ell / k for ell, k in zip(self.length, self.n))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.h)

    @property
    def volume(self) -> float:
        """Measure of the whole box."""
        return math.prod(self.length)

    def centers(self, axis: int) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        h = self.h[axis]
        return (np.arange(self.n[axis]) + 0.5) * h

    def meshcenters(self) -> list[np.ndarray]:
        """Cell-center coordinate arrays broadcastable to the cell shape."""
        return list(np.meshgrid(*(self.centers(ax) for ax in range(self.dim)), indexing="ij"))

    def field(self, values) -> "Field":
        """Wrap values (scalar or array) as a Field on this grid."""
        arr = np.asarray(values, dtype=float)
        if arr.ndim == 0:
            arr = np.full(self.n, float(arr))
        return Field(self, arr.copy())


@dataclass(frozen=True)
class Field:
    """Cell-average values on a grid.  Treated as immutable by convention."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != self.grid.n:
            raise ValueError(f"values shape {self.values.shape} does not match grid {self.grid.n}")
        if self.values.dtype != np.float64:
            object.__setattr__(self, "values", self.values.astype(np.float64))
        if not np.isfinite(self.values).all():
            raise ValueError("field values must all be finite")


# --- array kernels ---------------------------------------------------------
# The Field wrappers below delegate to these; the time stepper calls them
# directly on raw arrays in its inner loop.

def integrate_values(grid: Grid, values: np.ndarray) -> float:
    return grid.cell_volume * float(values.sum())


def face_gradient_values(grid: Grid, values: np.ndarray) -> tuple[np.ndarray, ...]:
    """Normal gradient on every face, per axis; boundary faces are zero."""
    out = []
    for ax in range(grid.dim):
        shape = list(grid.n)
        shape[ax] += 1
        faces = np.zeros(shape)
        interior = [slice(None)] * grid.dim
        interior[ax] = slice(1, grid.n[ax])
        faces[tuple(interior)] = np.diff(values, axis=ax) / grid.h[ax]
        out.append(faces)
    return tuple(out)


def divergence_values(grid: Grid, fluxes: tuple[np.ndarray, ...]) -> np.ndarray:
    """Outflow-minus-inflow per cell volume; telescopes to zero mass total."""
    out = np.zeros(grid.n)
    for ax in range(grid.dim):
        out += np.diff(fluxes[ax], axis=ax) / grid.h[ax]
    return out


def laplacian_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    return divergence_values(grid, face_gradient_values(grid, values))


def gradient_sq_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Cell-centered |grad f|^2: per-axis mean of the two squared face gradients.

    Nonnegative by construction and exact for linear profiles away from
    the boundary.
    """
    out = np.zeros(grid.n)
    faces = face_gradient_values(grid, values)
    for ax in range(grid.dim):
        left = [slice(None)] * grid.dim
        right = [slice(None)] * grid.dim
        left[ax] = slice(0, grid.n[ax])
        right[ax] = slice(1, grid.n[ax] + 1)
        g = faces[ax]
        out += 0.5 * (g[tuple(left)] ** 2 + g[tuple(right)] ** 2)
    return out


# --- Field-level API -------------------------------------------------------

def integrate(f: Field) -> float:
    """Discrete integral over the box (cell volume times sum)."""
    return integrate_values(f.grid, f.values)


def face_gradient(f: Field) -> tuple[np.ndarray, ...]:
    return face_gradient_values(f.grid, f.values)


def divergence(grid: Grid, fluxes: tuple[np.ndarray, ...]) -> Field:
    return Field(grid, divergence_values(grid, fluxes))


def laplacian_neumann(f: Field) -> Field:
    """Zero-flux Laplacian: divergence of the face gradients."""
    return Field(f.grid, laplacian_values(f.grid, f.values))


def cell_gradient_sq(f: Field) -> Field:
    return Field(f.grid, gradient_sq_values(f.grid, f.values))


# --- snapshot format -------------------------------------------------------
# Plain text: first line "dim n1 [n2] length1 [length2] t", then one row of
# cell values per grid line (a single row in 1-D), space-separated,
# row-major, 17 significant digits.

def write_snapshot(f: Field, t: float, path) -> None:
    g = f.grid
    header = " ".join(
        [str(g.dim)]
        + [str(k) for k in g.n]
        + [f"{ell:.17g}" for ell in g.length]
        + [f"{t:.17g}"]
    )
    rows = f.values.reshape(1, -1) if g.dim == 1 else f.values
    lines = [header]
    for row in rows:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_snapshot(path) -> tuple[Field, float]:
    with open(path) as fh:
        lines = [line for line in (raw.strip() for raw in fh) if line]
    head = lines[0].split()
    dim = int(head[0])
    if dim not in (1, 2) or len(head) != 2 * dim + 2:
        raise ValueError(f"malformed snapshot header: {lines[0]!r}")
    n = tuple(int(tok) for tok in head[1 : 1 + dim])
    length = tuple(float(tok) for tok in head[1 + dim : 1 + 2 * dim])
    t = float(head[-1])
    grid = Grid(n, length)
    data = [[float(tok) for tok in line.split()] for line in lines[1:]]
    values = np.asarray(data)
    expected_rows = 1 if dim == 1 else n[0]
    if values.shape != (expected_rows, n[-1]):
        raise ValueError(f"snapshot body {values.shape} does not match header {n}")
    return Field(grid, values.reshape(grid.n)), t
