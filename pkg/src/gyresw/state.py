"""Grid and state containers for the layered shallow-water solver.

Conserved variables are cell averages of (h, hu, hv) stored on a structured
grid with two ghost layers on every side.  Arrays are laid out as
``q[component, j, i]`` with ``i`` the x index, so ``q[0]`` is the depth
field.  Interior cell (i, j), numbered from 1, lives at array index
``[j + 1, i + 1]`` (NGHOST - 1 offset plus zero-based indexing).
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, PositivityError

NGHOST = 2

# Depths at or below this (in run units) abort the run: the target flow
# regimes never approach dry states, so a tiny depth means blow-up.
H_POSITIVITY_FLOOR = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform structured grid over [x0, x0+nx*dx] x [y0, y0+ny*dy]."""

    nx: int
    ny: int
    dx: float
    dy: float
    x0: float = 0.0
    y0: float = 0.0
    nghost: int = NGHOST

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ConfigError(f"cell counts must be >= 1, got nx={self.nx}, ny={self.ny}")
        if self.dx <= 0 or self.dy <= 0:
            raise ConfigError(f"cell sizes must be positive, got dx={self.dx}, dy={self.dy}")
        if self.nghost != NGHOST:
            raise ConfigError(f"ghost width is fixed at {NGHOST}")

    @property
    def shape(self):
        """Total array shape (ny + 2*nghost, nx + 2*nghost)."""
        return (self.ny + 2 * self.nghost, self.nx + 2 * self.nghost)

    @property
    def interior(self):
        """Slice pair selecting interior cells of a ghosted array."""
        g = self.nghost
        return (slice(g, g + self.ny), slice(g, g + self.nx))

    def cell_centers(self):
        """Interior cell-center coordinates as 1-D arrays (x, y)."""
        x = self.x0 + (np.arange(self.nx) + 0.5) * self.dx
        y = self.y0 + (np.arange(self.ny) + 0.5) * self.dy
        return x, y

    def cell_centers_ghosted(self):
        """Cell-center coordinates including ghost cells."""
        g = self.nghost
        x = self.x0 + (np.arange(-g, self.nx + g) + 0.5) * self.dx
        y = self.y0 + (np.arange(-g, self.ny + g) + 0.5) * self.dy
        return x, y


@dataclass(frozen=True)
class WindForcing:
    """Zonal wind-stress-curl forcing: F_u = -tau0/(rho*H0) * cos(2*pi*y/L)."""

    tau0: float
    rho: float
    H0: float
    L: float

    def __post_init__(self):
        if self.rho <= 0 or self.H0 <= 0 or self.L <= 0:
            raise ConfigError("wind forcing requires rho, H0, L > 0")


@dataclass(frozen=True)
class ManufacturedForcing:
    """Forcing that makes the periodic f-plane ansatz an exact solution."""

    eta: float
    eps: float
    omega: float
    froude: float
    reynolds: float
    rossby: float

    def __post_init__(self):
        if self.froude <= 0 or self.reynolds <= 0 or self.rossby <= 0:
            raise ConfigError("froude, reynolds, rossby must be positive")


@dataclass(frozen=True)
class PhysParams:
    """Physical coefficients of the momentum equations.

    g_r   : reduced gravity (m/s^2)
    f0    : Coriolis parameter at y = y0 (1/s)
    beta  : meridional Coriolis gradient (1/(m s))
    nu    : kinematic viscosity (m^2/s)
    forcing : None, WindForcing, or ManufacturedForcing
    """

    g_r: float
    f0: float = 0.0
    beta: float = 0.0
    nu: float = 0.0
    forcing: object = None

    def __post_init__(self):
        if self.g_r <= 0:
            raise ConfigError(f"reduced gravity must be positive, got {self.g_r}")
        if self.nu < 0:
            raise ConfigError(f"viscosity must be >= 0, got {self.nu}")


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run."""

    grid: Grid
    params: PhysParams
    t_end: float
    dt: float | None = None
    cfl_target: float | None = None
    splitting: str = "strang"        # godunov | strang
    limiter: str = "none"            # none | minmod | mc | superbee
    boundary: str = "periodic"       # periodic | solid_wall
    output_every: int = 0
    seed: int = 0

    def __post_init__(self):
        if (self.dt is None) == (self.cfl_target is None):
            raise ConfigError("exactly one of dt / cfl_target must be set")
        if self.dt is not None and self.dt <= 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.cfl_target is not None and not 0 < self.cfl_target <= 1:
            raise ConfigError(f"cfl_target must be in (0, 1], got {self.cfl_target}")
        if self.t_end <= 0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if self.splitting not in ("godunov", "strang"):
            raise ConfigError(f"unknown splitting {self.splitting!r}")
        if self.limiter not in ("none", "minmod", "mc", "superbee"):
            raise ConfigError(f"unknown limiter {self.limiter!r}")
        if self.boundary not in ("periodic", "solid_wall"):
            raise ConfigError(f"unknown boundary {self.boundary!r}")

    def with_(self, **kw):
        return replace(self, **kw)


def build_grid(nx, ny, x_extent, y_extent, x0=0.0, y0=0.0):
    """Build a grid covering [x0, x0+x_extent] x [y0, y0+y_extent]."""
    if x_extent <= 0 or y_extent <= 0:
        raise ConfigError("domain extents must be positive")
    return Grid(nx=nx, ny=ny, dx=x_extent / nx, dy=y_extent / ny, x0=x0, y0=y0)


def alloc_field(grid, h0=None):
    """Allocate a ghosted conserved field (3, ny+4, nx+4), optionally at rest depth h0."""
    q = np.zeros((3,) + grid.shape)
    if h0 is not None:
        q[0] = h0
    return q


def check_positivity(q, grid, where="interior"):
    """Abort with diagnostics if any interior depth is at/below the floor."""
    jj, ii = grid.interior
    h = q[0][jj, ii]
    if not np.all(h > H_POSITIVITY_FLOOR):
        j, i = np.unravel_index(np.argmin(h), h.shape)
        raise PositivityError(
            f"nonpositive water depth h={h[j, i]:.3e} at interior cell "
            f"(i={i + 1}, j={j + 1}) [{where}]: the water depth is zero or "
            "negative, which is not physically meaningful"
        )


def primitives(q):
    """Convert conserved (h, hu, hv) to primitive (h, u, v).

    Works on scalars or arrays; raises PositivityError for h <= floor.
    """
    h, hu, hv = q[0], q[1], q[2]
    if not np.all(np.asarray(h) > H_POSITIVITY_FLOOR):
        raise PositivityError(
            "the water depth is zero, which is not physically meaningful"
        )
    return h, hu / h, hv / h


def conserved(h, u, v):
    """Inverse of :func:`primitives`."""
    return np.array([h, np.multiply(h, u), np.multiply(h, v)])
