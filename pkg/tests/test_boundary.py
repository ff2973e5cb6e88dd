import numpy as np
import pytest

from gyresw.boundary import (fill_ghost, fill_ghost_periodic,
                             fill_ghost_solid_wall, ghost_velocities)
from gyresw.errors import PositivityError
from gyresw.state import alloc_field, build_grid


def _numbered_field(grid):
    """Interior cells hold distinct values; ghosts start at zero."""
    rng = np.random.default_rng(5)
    q = alloc_field(grid)
    jj, ii = grid.interior
    q[0][jj, ii] = rng.uniform(1.0, 2.0, (grid.ny, grid.nx))
    q[1][jj, ii] = rng.normal(0.0, 1.0, (grid.ny, grid.nx))
    q[2][jj, ii] = rng.normal(0.0, 1.0, (grid.ny, grid.nx))
    return q


def test_periodic_wraps_both_layers():
    grid = build_grid(6, 5, 1.0, 1.0)
    q = _numbered_field(grid)
    fill_ghost_periodic(q, grid)
    g = grid.nghost
    assert np.array_equal(q[:, :, :g], q[:, :, grid.nx:grid.nx + g])
    assert np.array_equal(q[:, :g, :], q[:, grid.ny:grid.ny + g, :])
    # corner block equals the diagonally opposite interior block
    assert np.array_equal(q[:, 0, 0], q[:, grid.ny, grid.nx])


def test_solid_wall_mirrors_depth_negates_momenta():
    grid = build_grid(6, 5, 1.0, 1.0)
    q = _numbered_field(grid)
    fill_ghost_solid_wall(q, grid)
    g = grid.nghost
    for layer in range(g):
        # west wall: ghost column g-1-layer mirrors interior column g+layer
        assert np.array_equal(q[0, g:-g, g - 1 - layer], q[0, g:-g, g + layer])
        assert np.array_equal(q[1, g:-g, g - 1 - layer], -q[1, g:-g, g + layer])
        assert np.array_equal(q[2, g:-g, g - 1 - layer], -q[2, g:-g, g + layer])
        # north wall
        top = grid.ny + g
        assert np.array_equal(q[0, top + layer, g:-g], q[0, top - 1 - layer, g:-g])
        assert np.array_equal(q[1, top + layer, g:-g], -q[1, top - 1 - layer, g:-g])


def test_solid_wall_corner_applies_both_reflections():
    grid = build_grid(4, 4, 1.0, 1.0)
    q = _numbered_field(grid)
    fill_ghost_solid_wall(q, grid)
    g = grid.nghost
    # the corner ghost is the double reflection: depth preserved, momenta
    # negated twice
    assert q[0, g - 1, g - 1] == q[0, g, g]
    assert q[1, g - 1, g - 1] == q[1, g, g]
    assert q[2, g - 1, g - 1] == q[2, g, g]


def test_solid_wall_x_then_y_commutes():
    grid = build_grid(5, 7, 1.0, 1.0)
    q = _numbered_field(grid)
    a = fill_ghost_solid_wall(np.array(q, copy=True), grid)
    # apply the reflections in the opposite order by transposing the roles
    b = np.array(q, copy=True)
    g = grid.nghost
    sign = np.array([1.0, -1.0, -1.0]).reshape(3, 1, 1)
    b[:, g - 1::-1, :] = sign * b[:, g:2 * g, :]
    b[:, :grid.ny + g - 1:-1, :] = sign * b[:, grid.ny:grid.ny + g, :]
    b[:, :, g - 1::-1] = sign * b[:, :, g:2 * g]
    b[:, :, :grid.nx + g - 1:-1] = sign * b[:, :, grid.nx:grid.nx + g]
    assert np.array_equal(a, b)


def test_fill_ghost_dispatch_rejects_unknown_kind():
    grid = build_grid(4, 4, 1.0, 1.0)
    q = _numbered_field(grid)
    with pytest.raises(ValueError, match="unknown boundary"):
        fill_ghost(q, grid, "open")


def test_ghost_velocities_vanish_on_wall_faces():
    grid = build_grid(6, 4, 1.0, 1.0)
    q = _numbered_field(grid)
    fill_ghost_solid_wall(q, grid)
    U, V = ghost_velocities(q, grid)
    g = grid.nghost
    # face average of ghost and first interior cell is exactly zero
    assert np.abs(U[g:-g, g - 1] + U[g:-g, g]).max() == 0.0
    assert np.abs(V[g - 1, g:-g] + V[g, g:-g]).max() == 0.0


def test_ghost_velocities_reject_dry_cells():
    grid = build_grid(4, 4, 1.0, 1.0)
    q = alloc_field(grid)   # h = 0 everywhere
    with pytest.raises(PositivityError):
        ghost_velocities(q, grid)
