import numpy as np
import pytest

from gyresw.boundary import fill_ghost
from gyresw.kernels import ACTIVE_BACKEND, LIMITER_IDS, get_backend
from gyresw.kernels.pykernels import limiter_phi, step_hyperbolic, step_tracer
from gyresw.state import alloc_field, build_grid

HAVE_CYTHON = ACTIVE_BACKEND == "cython"

LIMITERS = sorted(LIMITER_IDS)
BOUNDARIES = ["periodic", "solid_wall"]


def _random_state(grid, seed):
    rng = np.random.default_rng(seed)
    q = alloc_field(grid)
    jj, ii = grid.interior
    q[0][jj, ii] = rng.uniform(1.0, 1.4, (grid.ny, grid.nx))
    q[1][jj, ii] = 0.1 * rng.normal(size=(grid.ny, grid.nx))
    q[2][jj, ii] = 0.1 * rng.normal(size=(grid.ny, grid.nx))
    return q


def test_limiter_phi_is_one_for_smooth_data():
    # every limiter reproduces the unlimited second-order wave at theta = 1
    for name, kid in LIMITER_IDS.items():
        assert limiter_phi(1.0, kid) == pytest.approx(1.0), name


def test_limiter_phi_vanishes_at_extrema():
    for kid in (1, 2, 3):
        assert limiter_phi(-0.7, kid) == 0.0


def test_limiter_phi_spot_values():
    assert limiter_phi(0.25, 1) == pytest.approx(0.25)       # minmod
    assert limiter_phi(3.0, 2) == pytest.approx(2.0)         # mc clips at 2
    assert limiter_phi(0.5, 3) == pytest.approx(1.0)         # superbee
    with pytest.raises(ValueError):
        limiter_phi(1.0, 7)


@pytest.mark.parametrize("limiter", LIMITERS)
def test_constant_state_is_a_fixed_point(limiter):
    grid = build_grid(8, 6, 1.0, 1.0)
    q = alloc_field(grid, h0=1.3)
    fill_ghost(q, grid, "periodic")
    qn, sx, sy = step_hyperbolic(q, grid.dx, grid.dy, 0.01, 0.5,
                                 LIMITER_IDS[limiter], False)
    jj, ii = grid.interior
    assert np.array_equal(qn[:, jj, ii], q[:, jj, ii])
    # wave speeds are the gravity-wave speeds even when all waves vanish
    c = np.sqrt(0.5 * 1.3)
    assert sx == pytest.approx(c) and sy == pytest.approx(c)


@pytest.mark.parametrize("boundary", BOUNDARIES)
@pytest.mark.parametrize("limiter", LIMITERS)
def test_total_depth_is_exactly_conserved(limiter, boundary):
    grid = build_grid(12, 10, 1.0, 1.0)
    q = _random_state(grid, seed=3)
    jj, ii = grid.interior
    mass0 = q[0][jj, ii].sum()
    solid = boundary == "solid_wall"
    for _ in range(5):
        fill_ghost(q, grid, boundary)
        q, _, _ = step_hyperbolic(q, grid.dx, grid.dy, 0.05, 0.5,
                                  LIMITER_IDS[limiter], solid)
    drift = abs(q[0][jj, ii].sum() - mass0)
    assert drift <= 1e-13 * mass0


def test_dam_break_stays_y_invariant():
    """A jump in x with no y variation must not create any."""
    grid = build_grid(20, 8, 1.0, 1.0)
    q = alloc_field(grid, h0=1.0)
    jj, ii = grid.interior
    q[0][jj, ii][:, :10] = 2.0
    fill_ghost(q, grid, "periodic")
    for _ in range(4):
        q, _, _ = step_hyperbolic(q, grid.dx, grid.dy, 0.05, 1.0,
                                  LIMITER_IDS["mc"], False)
        fill_ghost(q, grid, "periodic")
    inner = q[:, jj, ii]
    assert np.abs(inner[0] - inner[0][:1, :]).max() == 0.0
    assert np.abs(inner[2]).max() == 0.0


def test_x_and_y_sweeps_transpose_bitwise():
    """Transposing the grid and swapping momenta commutes with the step."""
    grid = build_grid(14, 14, 1.0, 1.0)
    q = _random_state(grid, seed=11)
    fill_ghost(q, grid, "periodic")
    qt = np.ascontiguousarray(q[[0, 2, 1]].transpose(0, 2, 1))
    a, sxa, sya = step_hyperbolic(q, grid.dx, grid.dy, 0.04, 0.8,
                                  LIMITER_IDS["superbee"], False)
    b, sxb, syb = step_hyperbolic(qt, grid.dx, grid.dy, 0.04, 0.8,
                                  LIMITER_IDS["superbee"], False)
    assert np.array_equal(a, b[[0, 2, 1]].transpose(0, 2, 1))
    assert sxa == syb and sya == sxb


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernels unavailable")
@pytest.mark.parametrize("boundary", BOUNDARIES)
@pytest.mark.parametrize("limiter", LIMITERS)
def test_compiled_hyperbolic_step_matches_numpy_bitwise(limiter, boundary):
    py_step, _ = get_backend("python")
    cy_step, _ = get_backend("cython")
    grid = build_grid(13, 9, 1.0, 1.0)
    solid = boundary == "solid_wall"
    for seed in range(3):
        q = _random_state(grid, seed=seed)
        fill_ghost(q, grid, boundary)
        a, sxa, sya = py_step(q, grid.dx, grid.dy, 0.05, 0.5,
                              LIMITER_IDS[limiter], solid)
        b, sxb, syb = cy_step(q, grid.dx, grid.dy, 0.05, 0.5,
                              LIMITER_IDS[limiter], solid)
        assert np.array_equal(a, b)
        assert sxa == sxb and sya == syb


def _tracer_inputs(grid, seed):
    rng = np.random.default_rng(seed)
    ty, tx = grid.shape[1] + 0, grid.shape[0]
    c = rng.uniform(0.0, 1.0, grid.shape[::-1])
    uf = 0.4 * rng.normal(size=(grid.shape[1], grid.shape[0] - 1))
    vf = 0.4 * rng.normal(size=(grid.shape[1] - 1, grid.shape[0]))
    return c, uf, vf


@pytest.mark.skipif(not HAVE_CYTHON, reason="compiled kernels unavailable")
@pytest.mark.parametrize("limiter", LIMITERS)
def test_compiled_tracer_step_matches_numpy_bitwise(limiter):
    _, py_tr = get_backend("python")
    _, cy_tr = get_backend("cython")
    grid = build_grid(11, 8, 1.0, 1.0)
    for seed in range(3):
        c, uf, vf = _tracer_inputs(grid, seed)
        a = py_tr(c, uf, vf, grid.dx, grid.dy, 0.05, LIMITER_IDS[limiter])
        b = cy_tr(c, uf, vf, grid.dx, grid.dy, 0.05, LIMITER_IDS[limiter])
        assert np.array_equal(a, b)


def test_tracer_constant_field_is_preserved():
    """Advection of a constant leaves it unchanged for divergence-free or
    not: the scheme is written in advective (color) form."""
    grid = build_grid(10, 10, 1.0, 1.0)
    _, uf, vf = _tracer_inputs(grid, seed=2)
    c = np.full(grid.shape[::-1], 0.7)
    cn = step_tracer(c, uf, vf, grid.dx, grid.dy, 0.05, LIMITER_IDS["mc"])
    jj, ii = grid.interior
    assert np.abs(cn[jj, ii] - 0.7).max() <= 1e-15


def test_backend_selector_rejects_unknown_name():
    with pytest.raises(ValueError):
        get_backend("fortran")
