"""Ghost-cell filling for periodic and solid-wall (no-slip) boundaries.

The solid-wall fill mirrors the depth and negates BOTH momentum components
in each ghost layer:

    H_0 = H_1,   (HU)_0 = -(HU)_1,   (HV)_0 = -(HV)_1
    H_-1 = H_2,  (HU)_-1 = -(HU)_2,  (HV)_-1 = -(HV)_2

applied with the indices normal to each wall.  Negating the tangential
momentum too (rather than plain reflection) is what enforces the no-slip
prescription once ghost velocities are formed for the viscous stencil.
Corners are covered by applying the x-wall rule and then the y-wall rule;
the two commute on the corner blocks.
"""

import numpy as np

from .state import H_POSITIVITY_FLOOR
from .errors import PositivityError


def fill_ghost_periodic(q, grid):
    """Wrap ghost layers from the opposite interior edge, in place.

    Corners come out right because the y wrap copies columns already
    wrapped in x.  Returns q for chaining.
    """
    g = grid.nghost
    nx, ny = grid.nx, grid.ny
    # x direction
    q[:, :, :g] = q[:, :, nx:nx + g]
    q[:, :, nx + g:] = q[:, :, g:2 * g]
    # y direction
    q[:, :g, :] = q[:, ny:ny + g, :]
    q[:, ny + g:, :] = q[:, g:2 * g, :]
    return q


def fill_ghost_solid_wall(q, grid):
    """No-slip wall fill on all four walls, in place.  Returns q."""
    g = grid.nghost
    nx, ny = grid.nx, grid.ny
    sign = np.array([1.0, -1.0, -1.0]).reshape(3, 1, 1)
    # west / east walls: mirror columns about the wall face
    q[:, :, g - 1::-1] = sign * q[:, :, g:2 * g]
    q[:, :, :nx + g - 1:-1] = sign * q[:, :, nx:nx + g]
    # south / north walls (reads the ghost columns just written -> corners)
    q[:, g - 1::-1, :] = sign * q[:, g:2 * g, :]
    q[:, :ny + g - 1:-1, :] = sign * q[:, ny:ny + g, :]
    return q


def fill_ghost(q, grid, kind):
    if kind == "periodic":
        return fill_ghost_periodic(q, grid)
    if kind == "solid_wall":
        return fill_ghost_solid_wall(q, grid)
    raise ValueError(f"unknown boundary kind {kind!r}")


def ghost_velocities(q, grid):
    """Cell-center velocities U = HU/H, V = HV/H over interior + ghosts.

    Requires ghost cells already filled by the active boundary kind; with
    the solid-wall fill the ghost velocities are the exact negatives of
    their interior mirrors, so the wall-face average velocity vanishes
    (no-slip).  The five-point Laplacian only reads the first ghost layer,
    but the full ghosted array is returned for convenience.
    """
    h = q[0]
    if not np.all(h > H_POSITIVITY_FLOOR):
        raise PositivityError(
            "nonpositive depth encountered while forming ghost velocities"
        )
    return q[1] / h, q[2] / h
