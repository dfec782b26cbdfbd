"""Cell-centered grid, zero-flux difference kernels, snapshot files."""

import math

import numpy as np
import pytest

from preytaxis import Field, Grid, read_snapshot, write_snapshot
from preytaxis.grid import (
    cell_gradient_sq,
    divergence,
    divergence_values,
    face_gradient,
    face_gradient_values,
    gradient_sq_values,
    integrate,
    integrate_values,
    laplacian_neumann,
    laplacian_values,
)


def test_grid_geometry():
    g = Grid((4,), (2.0,))
    assert g.dim == 1
    assert g.h == (0.5,)
    assert g.cell_volume == 0.5
    assert g.volume == 2.0
    assert np.allclose(g.centers(0), [0.25, 0.75, 1.25, 1.75])

    g2 = Grid.uniform(2, 8, 4.0)
    assert g2.n == (8, 8)
    assert g2.volume == 16.0
    X, Y = g2.meshcenters()
    assert X.shape == (8, 8)
    assert X[1, 0] - X[0, 0] == pytest.approx(0.5)
    assert Y[0, 1] - Y[0, 0] == pytest.approx(0.5)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid((4, 4, 4), (1.0, 1.0, 1.0))  # only 1d/2d
    with pytest.raises(ValueError):
        Grid((3,), (1.0,))  # too coarse
    with pytest.raises(ValueError):
        Grid((8,), (-1.0,))
    with pytest.raises(ValueError):
        Grid((8,), (1.0, 1.0))  # rank mismatch


def test_field_validation():
    g = Grid.uniform(1, 8, 1.0)
    with pytest.raises(ValueError):
        Field(g, np.zeros(7))
    with pytest.raises(ValueError):
        Field(g, np.full(8, np.nan))
    f = g.field(np.arange(8))
    assert f.values.dtype == np.float64


def test_integrate_constant_is_exact():
    g = Grid.uniform(2, 16, 3.0)
    assert integrate(g.field(np.ones(g.n))) == pytest.approx(9.0, rel=1e-15)


def test_face_gradient_linear_profile():
    """Interior face gradients of a linear profile are exact; boundary faces zero."""
    g = Grid.uniform(1, 10, 2.0)
    f = g.field(3.0 * g.centers(0) + 1.0)
    (gx,) = face_gradient(f)
    assert gx.shape == (11,)
    assert gx[0] == 0.0 and gx[-1] == 0.0
    assert np.allclose(gx[1:-1], 3.0, rtol=1e-13)


def test_divergence_telescopes_to_zero_mass():
    rng = np.random.default_rng(7)
    for dim in (1, 2):
        g = Grid.uniform(dim, 12, 1.5)
        fluxes = []
        for ax in range(dim):
            shape = list(g.n)
            shape[ax] += 1
            fx = rng.normal(size=shape)
            # zero-flux boundary
            sl = [slice(None)] * dim
            sl[ax] = 0
            fx[tuple(sl)] = 0.0
            sl[ax] = -1
            fx[tuple(sl)] = 0.0
            fluxes.append(fx)
        div = divergence_values(g, tuple(fluxes))
        assert abs(integrate_values(g, div)) < 1e-12


def test_laplacian_cosine_eigenmode():
    # cos(k pi x / L) is an exact eigenvector of the discrete operator
    g = Grid.uniform(1, 64, 1.0)
    h = g.h[0]
    for k in (1, 3):
        f = np.cos(k * np.pi * g.centers(0))
        lam = -(2.0 / h**2) * (1.0 - np.cos(k * np.pi * h))
        assert np.max(np.abs(laplacian_values(g, f) - lam * f)) < 1e-10

    g2 = Grid.uniform(2, 24, 2.0)
    X, Y = g2.meshcenters()
    f2 = np.cos(np.pi * X / 2.0) * np.cos(np.pi * Y / 2.0)
    h2 = g2.h[0]
    lam2 = -2.0 * (2.0 / h2**2) * (1.0 - np.cos(np.pi * h2 / 2.0))
    assert np.max(np.abs(laplacian_values(g2, f2) - lam2 * f2)) < 1e-10


def test_laplacian_of_constant_is_zero():
    g = Grid.uniform(2, 8, 1.0)
    assert np.all(laplacian_neumann(g.field(np.full(g.n, 4.2))).values == 0.0)


def test_gradient_sq_linear_profile():
    g = Grid.uniform(1, 6, 3.0)
    f = g.field(2.0 * g.centers(0))
    gsq = cell_gradient_sq(f).values
    # interior cells average two faces with slope 2; boundary cells see one zero face
    assert np.allclose(gsq[1:-1], 4.0, rtol=1e-13)
    assert np.allclose(gsq[[0, -1]], 2.0, rtol=1e-13)
    raw = gradient_sq_values(g, f.values)
    assert np.array_equal(raw, gsq)


def test_divergence_of_face_gradient_matches_laplacian():
    rng = np.random.default_rng(11)
    g = Grid.uniform(2, 10, 1.0)
    f = g.field(rng.uniform(0.5, 2.0, size=g.n))
    via_div = divergence(g, face_gradient_values(g, f.values)).values
    assert np.allclose(via_div, laplacian_values(g, f.values), rtol=1e-12, atol=1e-12)


def test_snapshot_roundtrip_1d(tmp_path):
    g = Grid.uniform(1, 9, 2.5)
    rng = np.random.default_rng(3)
    f = g.field(rng.lognormal(size=g.n))
    path = tmp_path / "field.txt"
    write_snapshot(f, 1.25, path)
    back, t = read_snapshot(path)
    assert t == 1.25
    assert back.grid.n == g.n
    assert back.grid.length == g.length
    assert np.array_equal(back.values, f.values)  # 17 digits round-trips exactly


def test_snapshot_roundtrip_2d(tmp_path):
    g = Grid((6, 4), (1.0, 3.0))
    rng = np.random.default_rng(5)
    f = g.field(rng.normal(size=g.n) ** 2 + 0.1)
    path = tmp_path / "field2d.txt"
    write_snapshot(f, 0.0, path)
    back, t = read_snapshot(path)
    assert t == 0.0
    assert back.grid.n == (6, 4)
    assert back.grid.length == (1.0, 3.0)
    assert np.array_equal(back.values, f.values)
    # one header line plus one line per first-axis row
    assert len(path.read_text().strip().splitlines()) == 7


def test_snapshot_header_format(tmp_path):
    g = Grid.uniform(1, 4, 1.0)
    path = tmp_path / "s.txt"
    write_snapshot(g.field(np.ones(4)), 0.5, path)
    header = path.read_text().splitlines()[0].split()
    assert header == ["1", "4", "1", "0.5"]
