"""Passive tracer transport: the color equation one-way coupled to the flow.

The tracer C is advected in non-conservation form by face velocities
obtained from averaging adjacent cell-center velocities.  At a no-slip
wall the averaged face velocity is exactly zero (ghost velocities are
antisymmetric), so no tracer crosses the basin boundary.  Coupling is
one-way: the shallow-water trajectory is identical with and without the
tracer.
"""

import os
from dataclasses import dataclass

import numpy as np

from . import io as gio
from .boundary import fill_ghost, ghost_velocities
from .errors import CFLError, GyreswError
from .gyre import DAY, GyreSetup, snapshot_fields
from .kernels import LIMITER_IDS, get_backend
from .splitting import advance_godunov, advance_strang
from .state import RunConfig, check_positivity

DEFAULT_SNAPSHOT_DAYS = (0.0, 50.0, 100.0, 150.0, 240.0, 360.0)


@dataclass(frozen=True)
class CircleSpec:
    """Closed disk (cell centers with distance <= r are inside)."""

    xc: float
    yc: float
    r: float

    def __post_init__(self):
        if self.r <= 0:
            raise GyreswError("circle radius must be positive")

    def contains(self, x, y):
        return (x - self.xc) ** 2 + (y - self.yc) ** 2 <= self.r ** 2


#: the standard two-circle release: r = 150 km disks at mid-longitude,
#: centered on each half-basin
DEFAULT_CIRCLES = (CircleSpec(500.0e3, 500.0e3, 150.0e3),
                   CircleSpec(500.0e3, 1500.0e3, 150.0e3))


def edge_velocities(q, grid, boundary="solid_wall"):
    """Face-normal velocities by averaging adjacent cell-center values.

    Returns (uf, vf) with uf on x-faces, shape (ty, tx-1), and vf on
    y-faces, shape (ty-1, tx), both over the ghosted index range.
    """
    qg = np.array(q, copy=True)
    fill_ghost(qg, grid, boundary)
    U, V = ghost_velocities(qg, grid)
    uf = 0.5 * (U[:, :-1] + U[:, 1:])
    vf = 0.5 * (V[:-1, :] + V[1:, :])
    return uf, vf


def alloc_tracer(grid):
    return np.zeros(grid.shape)


def init_concentration(grid, circles=DEFAULT_CIRCLES, seed=0,
                       distribution="uniform"):
    """Random concentration in (0, 1] inside the circles, 0 outside.

    distribution: "uniform" for uniform(0, 1], "gaussian" for a normal
    (mu=0.5, sigma=0.25) redrawn until it lands in (0, 1].  Cells are
    visited in row-major interior order, so a given seed reproduces the
    same field at any rank of the circle list.
    """
    rng = np.random.default_rng(seed)
    c = alloc_tracer(grid)
    x, y = grid.cell_centers()
    xx, yy = np.meshgrid(x, y)
    inside = np.zeros((grid.ny, grid.nx), dtype=bool)
    for circle in circles:
        inside |= circle.contains(xx, yy)
    n = int(inside.sum())
    if distribution == "uniform":
        # uniform on (0, 1]: flip the half-open interval of random()
        vals = 1.0 - rng.random(n)
    elif distribution == "gaussian":
        vals = np.empty(n)
        filled = 0
        while filled < n:
            draw = rng.normal(0.5, 0.25, n - filled)
            keep = draw[(draw > 0.0) & (draw <= 1.0)]
            vals[filled:filled + len(keep)] = keep
            filled += len(keep)
    else:
        raise GyreswError(f"unknown distribution {distribution!r}")
    jj, ii = grid.interior
    block = np.zeros((grid.ny, grid.nx))
    block[inside] = vals
    c[jj, ii] = block
    return c


def fill_tracer_ghost(c, grid, boundary="solid_wall"):
    """Zero-gradient ghost fill (walls) or periodic wrap for the tracer."""
    g = grid.nghost
    if boundary == "periodic":
        c[:, :g] = c[:, -2 * g:-g]
        c[:, -g:] = c[:, g:2 * g]
        c[:g, :] = c[-2 * g:-g, :]
        c[-g:, :] = c[g:2 * g, :]
    elif boundary == "solid_wall":
        c[:, :g] = c[:, g:g + 1]
        c[:, -g:] = c[:, -g - 1:-g]
        c[:g, :] = c[g:g + 1, :]
        c[-g:, :] = c[-g - 1:-g, :]
    else:
        raise GyreswError(f"unknown boundary {boundary!r}")


def step_tracer(c, uf, vf, grid, dt, limiter="mc", boundary="solid_wall",
                backend="active"):
    """Advance the tracer one step; checks the face Courant bound."""
    courant = dt * max(np.abs(uf).max() / grid.dx, np.abs(vf).max() / grid.dy)
    if courant > 1.0 + 1e-12:
        raise CFLError(f"tracer face Courant {courant:.3f} exceeds 1")
    cg = np.array(c, copy=True)
    fill_tracer_ghost(cg, grid, boundary)
    _, kernel = get_backend(backend)
    return kernel(cg, np.ascontiguousarray(uf), np.ascontiguousarray(vf),
                  grid.dx, grid.dy, dt, LIMITER_IDS[limiter])


def tracer_centroid(c, grid):
    """C-weighted centroid (x, y) over interior cells."""
    jj, ii = grid.interior
    w = c[jj, ii]
    total = w.sum()
    if total <= 0:
        raise GyreswError("tracer centroid undefined for a zero field")
    x, y = grid.cell_centers()
    xx, yy = np.meshgrid(x, y)
    return float((w * xx).sum() / total), float((w * yy).sum() / total)


def run_coupled(setup=None, q0=None, c0=None, dx=10.0e3, dt=720.0,
                t_end=360.0 * DAY, splitting="strang", limiter="mc",
                boundary="solid_wall", snapshot_days=DEFAULT_SNAPSHOT_DAYS,
                out_dir=None, formats=("csv",), backend="active",
                hooks=None, seed=0):
    """Advance flow and tracer together from a spun-up state.

    Per step the shallow-water field advances by the split scheme (wind
    stays on), then the tracer advects with the updated velocities.
    Snapshots are written at the configured day marks.  Returns
    (q, c, written paths).
    """
    setup = setup or GyreSetup()
    grid = setup.grid(dx)
    if q0 is None:
        raise GyreswError("run_coupled needs a spun-up initial state q0")
    if c0 is None:
        c0 = init_concentration(grid, seed=seed)
    config = RunConfig(grid=grid, params=setup.params(), t_end=t_end, dt=dt,
                       splitting=splitting, limiter=limiter, boundary=boundary)
    advance = advance_strang if splitting == "strang" else advance_godunov

    q = np.array(q0, dtype=np.float64, copy=True)
    c = np.array(c0, dtype=np.float64, copy=True)
    written = []
    remaining = sorted(float(d) for d in snapshot_days)

    def emit(t):
        if out_dir is None:
            return
        day = t / DAY
        stem = os.path.join(gio.ensure_out_dir(out_dir),
                            f"tracer_day{day:07.1f}")
        jj, ii = grid.interior
        fields = {"C": c[jj, ii]}
        if "csv" in formats:
            gio.write_csv(stem + ".csv", grid, t, fields)
            written.append(stem + ".csv")
        if "vtk" in formats:
            gio.write_vtk(stem + ".vtk", grid, t, fields)
            written.append(stem + ".vtk")

    t = 0.0
    step = 0
    while remaining and remaining[0] <= t / DAY + 1e-9:
        emit(t)
        remaining.pop(0)
    while t < t_end * (1.0 - 1e-14):
        dt_step = min(dt, t_end - t)
        q, _ = advance(q, grid, config.params, dt_step, t, limiter,
                       boundary, backend=backend)
        check_positivity(q, grid, where=f"coupled step {step}")
        uf, vf = edge_velocities(q, grid, boundary)
        c = step_tracer(c, uf, vf, grid, dt_step, limiter=limiter,
                        boundary=boundary, backend=backend)
        t += dt_step
        step += 1
        if hooks:
            for hook in hooks:
                hook(step, t, q, c)
        while remaining and remaining[0] <= t / DAY + 1e-9:
            emit(t)
            remaining.pop(0)
    return q, c, written
