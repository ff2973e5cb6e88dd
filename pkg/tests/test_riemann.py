import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyresw.errors import PositivityError
from gyresw.riemann import (eigen_x, eigen_y, flux_x, flux_y, roe_average,
                            solve_riemann)

G_R = 0.7

depths = st.floats(0.05, 50.0)
speeds = st.floats(-5.0, 5.0)


def jacobian_x(h, u, v, g_r):
    """Analytic d f / d q for checking the eigen decomposition."""
    return np.array([
        [0.0, 1.0, 0.0],
        [g_r * h - u * u, 2.0 * u, 0.0],
        [-u * v, v, u],
    ])


def jacobian_y(h, u, v, g_r):
    return np.array([
        [0.0, 0.0, 1.0],
        [-u * v, v, u],
        [g_r * h - v * v, 0.0, 2.0 * v],
    ])


@given(depths, speeds, speeds)
def test_eigen_x_diagonalizes_the_jacobian(h, u, v):
    lam, r = eigen_x(h, u, v, G_R)
    A = jacobian_x(h, u, v, G_R)
    for p in range(3):
        resid = A @ r[p] - lam[p] * r[p]
        assert np.abs(resid).max() < 1e-9 * max(1.0, np.abs(A).max())


@given(depths, speeds, speeds)
def test_eigen_y_diagonalizes_the_jacobian(h, u, v):
    lam, r = eigen_y(h, u, v, G_R)
    B = jacobian_y(h, u, v, G_R)
    for p in range(3):
        resid = B @ r[p] - lam[p] * r[p]
        assert np.abs(resid).max() < 1e-9 * max(1.0, np.abs(B).max())


def test_eigen_speeds_are_ordered():
    lam, _ = eigen_x(2.0, 0.3, -0.1, G_R)
    assert lam[0] < lam[1] < lam[2]


def test_flux_rejects_dry_state():
    with pytest.raises(PositivityError):
        flux_x(np.array([0.0, 0.0, 0.0]), G_R)


def _random_states(rng):
    hl, hr = rng.uniform(0.1, 10.0, 2)
    ul, ur, vl, vr = rng.normal(0.0, 2.0, 4)
    return (np.array([hl, hl * ul, hl * vl]),
            np.array([hr, hr * ur, hr * vr]))


@pytest.mark.parametrize("direction", ["x", "y"])
def test_wave_completeness_and_roe_property(direction):
    """Waves sum to the jump; fluctuations sum to the flux difference."""
    rng = np.random.default_rng(42)
    flux = flux_x if direction == "x" else flux_y
    for _ in range(500):
        ql, qr = _random_states(rng)
        dec = solve_riemann(ql, qr, G_R, direction=direction)
        dq = qr - ql
        scale = max(np.abs(dq).max(), 1e-30)
        assert np.abs(dec.waves.sum(axis=0) - dq).max() <= 1e-12 * scale
        df = flux(qr, G_R) - flux(ql, G_R)
        fscale = max(np.abs(df).max(), 1e-30)
        total = dec.fluct_minus + dec.fluct_plus
        assert np.abs(total - df).max() <= 1e-12 * fscale


def test_identical_states_give_zero_waves():
    q = np.array([2.0, 0.6, -0.4])
    dec = solve_riemann(q, q.copy(), G_R, direction="x")
    assert np.abs(dec.waves).max() == 0.0
    assert np.abs(dec.fluct_minus).max() == 0.0
    assert np.abs(dec.fluct_plus).max() == 0.0


def test_roe_average_reduces_to_the_state_itself():
    q = np.array([4.0, 4.0 * 1.5, 4.0 * -0.2])
    h, u, v, c = roe_average(q, q, G_R)
    assert h == pytest.approx(4.0)
    assert u == pytest.approx(1.5)
    assert v == pytest.approx(-0.2)
    assert c == pytest.approx(np.sqrt(G_R * 4.0))


@given(depths, depths, speeds, speeds, speeds, speeds)
@settings(max_examples=200)
def test_x_y_solvers_mirror_each_other(hl, hr, ul, ur, vl, vr):
    """Swapping (hu, hv) maps the x decomposition onto the y one."""
    ql = np.array([hl, hl * ul, hl * vl])
    qr = np.array([hr, hr * ur, hr * vr])
    swap = [0, 2, 1]
    dx = solve_riemann(ql, qr, G_R, direction="x")
    dy = solve_riemann(ql[swap], qr[swap], G_R, direction="y")
    assert np.allclose(dx.speeds, dy.speeds, rtol=1e-13, atol=1e-13)
    assert np.allclose(dx.fluct_minus, dy.fluct_minus[swap],
                       rtol=1e-12, atol=1e-12)
    assert np.allclose(dx.fluct_plus, dy.fluct_plus[swap],
                       rtol=1e-12, atol=1e-12)


def test_supersonic_jump_goes_fully_one_way():
    # both states moving right faster than their gravity-wave speed
    ql = np.array([1.0, 5.0, 0.0])
    qr = np.array([1.2, 6.5, 0.0])
    dec = solve_riemann(ql, qr, G_R, direction="x")
    assert np.abs(dec.fluct_minus).max() == 0.0
    df = flux_x(qr, G_R) - flux_x(ql, G_R)
    assert np.allclose(dec.fluct_plus, df, rtol=1e-12)
