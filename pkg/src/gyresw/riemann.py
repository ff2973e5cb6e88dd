"""Fluxes, eigenstructure, and the Roe approximate Riemann solver.

The shallow-water system q_t + f(q)_x + g(q)_y = 0 with

    q = [h, hu, hv],
    f(q) = [hu, hu^2 + g_r h^2 / 2, huv],
    g(q) = [hv, huv, hv^2 + g_r h^2 / 2].

The x-direction Jacobian has eigenvalues (u-c, u, u+c) with c = sqrt(g_r h)
and eigenvectors r1 = (1, u-c, v), r2 = (0, 0, 1), r3 = (1, u+c, v); the
y-direction one is the mirror image.  Interface states are linearized with
the depth-square-root-weighted Roe average, the unique average satisfying

    sum_p s^p W^p = f(q_r) - f(q_l)

for this flux (checked directly by the property tests).
"""

from dataclasses import dataclass

import numpy as np

from .errors import PositivityError
from .state import H_POSITIVITY_FLOOR


def _require_depth(*hs):
    for h in hs:
        if not h > H_POSITIVITY_FLOOR:
            raise PositivityError(
                f"nonpositive depth h={h!r} in Riemann input: the water depth "
                "is zero, which is not physically meaningful"
            )


def flux_x(q, g_r):
    """Physical x-flux f(q) evaluated from conserved variables."""
    h, hu, hv = q
    _require_depth(h)
    return np.array([hu, hu * hu / h + 0.5 * g_r * h * h, hu * hv / h])


def flux_y(q, g_r):
    """Physical y-flux g(q); mirror of flux_x with u and v exchanged."""
    h, hu, hv = q
    _require_depth(h)
    return np.array([hv, hu * hv / h, hv * hv / h + 0.5 * g_r * h * h])


def eigen_x(h, u, v, g_r):
    """Eigenvalues and right eigenvectors of the x-direction Jacobian."""
    _require_depth(h)
    c = np.sqrt(g_r * h)
    lam = np.array([u - c, u, u + c])
    r = np.array([[1.0, u - c, v], [0.0, 0.0, 1.0], [1.0, u + c, v]])
    return lam, r


def eigen_y(h, u, v, g_r):
    """Eigenvalues and right eigenvectors of the y-direction Jacobian."""
    _require_depth(h)
    c = np.sqrt(g_r * h)
    lam = np.array([v - c, v, v + c])
    r = np.array([[1.0, u, v - c], [0.0, -1.0, 0.0], [1.0, u, v + c]])
    return lam, r


def roe_average(q_l, q_r, g_r):
    """Roe-averaged interface state (h_hat, u_hat, v_hat, c_hat)."""
    h_l, hu_l, hv_l = q_l
    h_r, hu_r, hv_r = q_r
    _require_depth(h_l, h_r)
    sl, sr = np.sqrt(h_l), np.sqrt(h_r)
    u_hat = (hu_l / sl + hu_r / sr) / (sl + sr)
    v_hat = (hv_l / sl + hv_r / sr) / (sl + sr)
    h_hat = 0.5 * (h_l + h_r)
    c_hat = np.sqrt(g_r * h_hat)
    return h_hat, u_hat, v_hat, c_hat


@dataclass(frozen=True)
class WaveDecomposition:
    """Waves, speeds, and fluctuations at one interface.

    waves[p] is the p-th wave (3-vector); speeds[p] its propagation speed.
    fluct_minus / fluct_plus are the left/right-going fluctuations whose sum
    equals the flux difference across the interface (the Roe property).
    """

    waves: np.ndarray        # (3, 3): waves[p] in R^3
    speeds: np.ndarray       # (3,)
    fluct_minus: np.ndarray  # (3,)
    fluct_plus: np.ndarray   # (3,)


def solve_riemann(q_l, q_r, g_r, direction="x"):
    """Roe solver: project the jump onto the Roe-averaged eigenvectors.

    Returns a WaveDecomposition with waves W^p = alpha^p r_hat^p, speeds
    s^p = lambda_hat^p, and fluctuations split by the sign of s^p.
    """
    _, u_hat, v_hat, c_hat = roe_average(q_l, q_r, g_r)
    dq = np.asarray(q_r, dtype=float) - np.asarray(q_l, dtype=float)
    d1, d2, d3 = dq

    # Closed-form projection (the 3x3 eigenvector matrix inverted analytically).
    if direction == "x":
        a1 = ((u_hat + c_hat) * d1 - d2) / (2.0 * c_hat)
        a3 = (d2 - (u_hat - c_hat) * d1) / (2.0 * c_hat)
        a2 = d3 - v_hat * d1
        speeds = np.array([u_hat - c_hat, u_hat, u_hat + c_hat])
        waves = np.array([
            a1 * np.array([1.0, u_hat - c_hat, v_hat]),
            a2 * np.array([0.0, 0.0, 1.0]),
            a3 * np.array([1.0, u_hat + c_hat, v_hat]),
        ])
    elif direction == "y":
        a1 = ((v_hat + c_hat) * d1 - d3) / (2.0 * c_hat)
        a3 = (d3 - (v_hat - c_hat) * d1) / (2.0 * c_hat)
        a2 = -(d2 - u_hat * d1)
        speeds = np.array([v_hat - c_hat, v_hat, v_hat + c_hat])
        waves = np.array([
            a1 * np.array([1.0, u_hat, v_hat - c_hat]),
            a2 * np.array([0.0, -1.0, 0.0]),
            a3 * np.array([1.0, u_hat, v_hat + c_hat]),
        ])
    else:
        raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")

    neg = speeds < 0.0
    fluct_minus = np.einsum("p,pk->k", np.where(neg, speeds, 0.0), waves)
    fluct_plus = np.einsum("p,pk->k", np.where(neg, 0.0, speeds), waves)
    return WaveDecomposition(waves=waves, speeds=speeds,
                             fluct_minus=fluct_minus, fluct_plus=fluct_plus)
