"""Problem A: the homogeneous hyperbolic step, with CFL bookkeeping.

The update over one time step is

    Q_ij <- Q_ij - dt/dx (A+dQ_{i-1/2} + A-dQ_{i+1/2})
                 - dt/dy (B+dQ_{j-1/2} + B-dQ_{j+1/2})
                 - dt/dx (F_{i+1/2} - F_{i-1/2})
                 - dt/dy (G_{j+1/2} - G_{j-1/2}),

with F, G the limited second-order correction fluxes
F = 1/2 sum_p |s^p| (1 - dt/dx |s^p|) Wlim^p plus transverse-wave
contributions.  The heavy lifting lives in :mod:`gyresw.kernels`.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CFLError, InstabilityError, PositivityError
from .state import H_POSITIVITY_FLOOR


@dataclass(frozen=True)
class HyperbolicStepReport:
    max_courant: float
    max_speed: float
    limiter_used: str


def apply_limiter(theta, kind):
    """Flux limiter phi(theta) for a given limiter name."""
    from .kernels import pykernels
    return pykernels.limiter_phi(theta, kernels.LIMITER_IDS[kind])


def max_wave_speed(q, grid, g_r):
    """Extremal characteristic speeds (|u|+c, |v|+c) over interior cells."""
    jj, ii = grid.interior
    h = q[0][jj, ii]
    if not np.all(h > H_POSITIVITY_FLOOR):
        raise PositivityError("nonpositive depth in max_wave_speed")
    c = np.sqrt(g_r * h)
    s_x = float(np.max(np.abs(q[1][jj, ii] / h) + c))
    s_y = float(np.max(np.abs(q[2][jj, ii] / h) + c))
    return s_x, s_y


def stable_dt(q, grid, g_r, cfl_target):
    """Largest dt meeting the target Courant number.

    Uses the conservative bound dt * (s_x/dx + s_y/dy) <= cfl_target, which
    also covers transverse propagation.  Returns +inf for a quiescent field
    with zero speeds (caller clamps).
    """
    if not 0.0 < cfl_target <= 1.0:
        raise ValueError(f"cfl_target must be in (0, 1], got {cfl_target}")
    s_x, s_y = max_wave_speed(q, grid, g_r)
    denom = s_x / grid.dx + s_y / grid.dy
    if denom == 0.0:
        return np.inf
    return cfl_target / denom


def step_hyperbolic(q, grid, dt, g_r, limiter="none", boundary="periodic",
                    backend="active"):
    """Advance Problem A by dt.  Ghost cells of q must be pre-filled.

    Returns (q_new, HyperbolicStepReport).  Ghost cells of q_new are stale.
    Raises CFLError if the realized Courant number exceeds 1 and
    InstabilityError on NaNs.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    kern, _ = kernels.get_backend(backend)
    if not np.all(q[0] > H_POSITIVITY_FLOOR):
        raise PositivityError(
            "nonpositive depth entering the hyperbolic step: the water depth "
            "is zero, which is not physically meaningful"
        )
    qn, smax_x, smax_y = kern(
        np.ascontiguousarray(q, dtype=np.float64),
        grid.dx, grid.dy, dt, g_r,
        kernels.LIMITER_IDS[limiter],
        boundary == "solid_wall",
    )
    max_courant = dt * max(smax_x / grid.dx, smax_y / grid.dy)
    if not np.isfinite(max_courant) or np.any(~np.isfinite(qn[(slice(None),) + grid.interior])):
        raise InstabilityError("NaN/Inf detected in hyperbolic step output")
    if max_courant > 1.0 + 1e-12:
        raise CFLError(
            f"CFL violation: max Courant {max_courant:.4f} > 1 "
            f"(dt={dt:.6g}, max speeds {smax_x:.4g}, {smax_y:.4g})"
        )
    report = HyperbolicStepReport(
        max_courant=max_courant,
        max_speed=max(smax_x, smax_y),
        limiter_used=limiter,
    )
    return qn, report
