"""Problem B: Coriolis, viscous, and forcing source terms for the momenta.

With the depth frozen (h_t = 0 in the split source problem), the momenta
obey the ODE system

    d(HU)/dt =  (f0 + beta*y) HV + nu H Lap5(U) + H F_u
    d(HV)/dt = -(f0 + beta*y) HU + nu H Lap5(V) + H F_v

with Lap5 the five-point centered Laplacian of the cell-center velocities
U = HU/H, V = HV/H, and y measured from the southern boundary.  The system
is advanced with Heun's two-stage second-order Runge-Kutta method; ghost
velocities are refreshed from the active boundary fill before every
right-hand-side evaluation so the Laplacian stencil is valid at
boundary-adjacent cells.
"""

import numpy as np

from .boundary import fill_ghost
from .errors import InstabilityError
from .state import ManufacturedForcing, WindForcing


def wind_forcing(y, spec):
    """Wind-stress-curl forcing at height y above the southern boundary."""
    fu = -(spec.tau0 / (spec.rho * spec.H0)) * np.cos(2.0 * np.pi * y / spec.L)
    return fu, np.zeros_like(np.asarray(y, dtype=float))


def manufactured_forcing(x, y, t, spec):
    """Forcing that balances the periodic f-plane ansatz, term by term."""
    two_pi = 2.0 * np.pi
    X = two_pi * np.asarray(x, dtype=float)
    Y = two_pi * np.asarray(y, dtype=float)
    p = spec.eta + spec.eps * np.sin(spec.omega * t)
    pdot = spec.eps * spec.omega * np.cos(spec.omega * t)
    expo = np.exp(np.cos(X) * np.cos(Y))
    fr2 = spec.froude ** 2
    fu = (pdot * np.cos(X) * np.sin(Y)
          - two_pi * p * p * np.sin(X) * np.cos(X)
          + (8.0 * np.pi ** 2 / spec.reynolds) * p * np.cos(X) * np.sin(Y)
          + (1.0 / spec.rossby) * p * np.sin(X) * np.cos(Y)
          - (two_pi / fr2) * np.sin(X) * np.cos(Y) * expo)
    fv = (-pdot * np.sin(X) * np.cos(Y)
          - two_pi * p * p * np.sin(Y) * np.cos(Y)
          - (8.0 * np.pi ** 2 / spec.reynolds) * p * np.sin(X) * np.cos(Y)
          + (1.0 / spec.rossby) * p * np.cos(X) * np.sin(Y)
          - (two_pi / fr2) * np.cos(X) * np.sin(Y) * expo)
    return fu, fv


def forcing_at(grid, params, t):
    """Evaluate (F_u, F_v) at interior cell centers; zeros if unforced."""
    x, y = grid.cell_centers()
    if isinstance(params.forcing, WindForcing):
        fu, fv = wind_forcing(y - grid.y0, params.forcing)
        return np.broadcast_to(fu[:, None], (grid.ny, grid.nx)), \
            np.broadcast_to(fv[:, None], (grid.ny, grid.nx))
    if isinstance(params.forcing, ManufacturedForcing):
        xx, yy = np.meshgrid(x, y)
        return manufactured_forcing(xx, yy, t, params.forcing)
    z = np.zeros((grid.ny, grid.nx))
    return z, z


def _lap5(a, grid):
    """Five-point Laplacian of a ghosted array, interior values only."""
    g = grid.nghost
    J = slice(g, g + grid.ny)
    I = slice(g, g + grid.nx)
    Jm = slice(g - 1, g + grid.ny - 1)
    Jp = slice(g + 1, g + grid.ny + 1)
    Im = slice(g - 1, g + grid.nx - 1)
    Ip = slice(g + 1, g + grid.nx + 1)
    return ((a[J, Im] - 2.0 * a[J, I] + a[J, Ip]) / grid.dx ** 2
            + (a[Jm, I] - 2.0 * a[J, I] + a[Jp, I]) / grid.dy ** 2)


def coriolis_at(grid, params):
    """f = f0 + beta * (y - y0) at interior cell centers, as a column."""
    _, y = grid.cell_centers()
    return (params.f0 + params.beta * (y - grid.y0))[:, None]


def eval_rhs(q, grid, params, t):
    """Right-hand side d(HU)/dt, d(HV)/dt on interior cells.

    q must be ghost-filled; velocities are recomputed as HU/H, HV/H.
    """
    g = grid.nghost
    J = slice(g, g + grid.ny)
    I = slice(g, g + grid.nx)
    h = q[0]
    u = q[1] / h
    v = q[2] / h
    f = coriolis_at(grid, params)
    fu, fv = forcing_at(grid, params, t)
    h_in = h[J, I]
    dhu = f * q[2][J, I] + params.nu * h_in * _lap5(u, grid) + h_in * fu
    dhv = -f * q[1][J, I] + params.nu * h_in * _lap5(v, grid) + h_in * fv
    if not (np.all(np.isfinite(dhu)) and np.all(np.isfinite(dhv))):
        raise InstabilityError("non-finite source-term right-hand side")
    return dhu, dhv


def rk2_advance(q, grid, params, dt, t, boundary):
    """Advance the momenta by one Heun (2-stage RK2) step; H is frozen.

    q: ghosted conserved field with valid interior; ghosts are refreshed
    here before each stage.  Returns a new field with updated interior
    momenta and stale ghosts.
    """
    g = grid.nghost
    J = slice(g, g + grid.ny)
    I = slice(g, g + grid.nx)

    qs = q.copy()
    fill_ghost(qs, grid, boundary)
    k1u, k1v = eval_rhs(qs, grid, params, t)

    q2 = qs.copy()
    q2[1][J, I] += dt * k1u
    q2[2][J, I] += dt * k1v
    fill_ghost(q2, grid, boundary)
    k2u, k2v = eval_rhs(q2, grid, params, t + dt)

    out = q.copy()
    out[1][J, I] += 0.5 * dt * (k1u + k2u)
    out[2][J, I] += 0.5 * dt * (k1v + k2v)

    ref = max(float(np.max(np.abs(q[1][J, I]))), float(np.max(np.abs(q[2][J, I]))), 1.0)
    new = max(float(np.max(np.abs(out[1][J, I]))), float(np.max(np.abs(out[2][J, I]))))
    if not np.isfinite(new) or new > 1e6 * ref:
        raise InstabilityError(
            f"source step blew up: max momentum {new:.3e} from {ref:.3e} in one step"
        )
    return out
