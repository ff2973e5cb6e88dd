"""Pure-numpy reference kernels for the hot stencil loops.

These are the fallback implementations; the compiled extension in
``_core.pyx`` mirrors them loop-for-loop.  Both operate on ghosted arrays
``q[3, ny + 4, nx + 4]`` and update interior cells only, leaving ghost
cells stale.

The hyperbolic step is the unsplit wave-propagation update: left/right
Roe fluctuations, limited second-order correction fluxes, and transverse
corrections obtained by splitting each normal fluctuation in the
cross-direction eigenbasis.  With solid walls the transverse terms that
would cross a wall face are suppressed, which keeps the total depth
exactly conservative under the no-slip ghost fill (the normal and
second-order wall-face contributions cancel by mirror symmetry; the
transverse ones do not).
"""

import numpy as np

NGHOST = 2

LIMITER_IDS = {"none": 0, "minmod": 1, "mc": 2, "superbee": 3}


def limiter_phi(theta, kind_id):
    """Vectorized flux limiter phi(theta)."""
    theta = np.asarray(theta)
    if kind_id == 0:
        return np.ones_like(theta)
    if kind_id == 1:
        return np.maximum(0.0, np.minimum(1.0, theta))
    if kind_id == 2:
        return np.maximum(0.0, np.minimum(np.minimum(0.5 * (1.0 + theta), 2.0),
                                          2.0 * theta))
    if kind_id == 3:
        return np.maximum(np.maximum(0.0, np.minimum(1.0, 2.0 * theta)),
                          np.minimum(2.0, theta))
    raise ValueError(f"unknown limiter id {kind_id}")


def _limit_waves(waves, speeds, kind_id):
    """Wave limiter along the last (interface) axis.

    Each wave W^p is compared against the same-family wave at the upwind
    interface via the inner-product ratio; the wave is then scaled by
    phi(theta).  waves: (3, 3, n_rows, n_ifaces) [family, comp, ...].
    """
    if kind_id == 0:
        return waves
    # the dot products group the momentum components together so that the
    # x and y sweeps stay bitwise-mirror images under transposition
    def dot(a, b):
        return a[0] * b[0] + (a[1] * b[1] + a[2] * b[2])

    limited = waves.copy()
    for p in range(3):
        w = waves[p]                      # (3, rows, ifaces)
        s = speeds[p]                     # (rows, ifaces)
        den = dot(w, w)
        dotl = np.zeros_like(den)
        dotr = np.zeros_like(den)
        dotl[:, 1:] = dot(w[:, :, 1:], w[:, :, :-1])
        dotr[:, :-1] = dot(w[:, :, :-1], w[:, :, 1:])
        num = np.where(s > 0.0, dotl, dotr)
        theta = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
        phi = limiter_phi(theta, kind_id)
        limited[p] = np.where(den > 0.0, phi[None] * w, w)
    return limited


def _roe_interface(ql, qr, g_r):
    """Roe-averaged velocities and gravity-wave speed at interfaces."""
    hl, hul, hvl = ql
    hr, hur, hvr = qr
    sl = np.sqrt(hl)
    sr = np.sqrt(hr)
    wsum = sl + sr
    uhat = (hul / sl + hur / sr) / wsum
    vhat = (hvl / sl + hvr / sr) / wsum
    chat = np.sqrt(g_r * 0.5 * (hl + hr))
    return uhat, vhat, chat


def _transverse_split(asdq, nhat, that, chat):
    """Split a fluctuation in the cross-direction eigenbasis.

    nhat is the Roe velocity normal to the *transverse* direction (the
    advected component), that the transverse one.  For an x-interface
    fluctuation split in y: nhat = uhat, that = vhat.  Returns the
    down/left-going and up/right-going parts (B-+/B+- analogues).
    """
    d1, d2, d3 = asdq
    b1 = ((that + chat) * d1 - d3) / (2.0 * chat)
    b3 = (d3 - (that - chat) * d1) / (2.0 * chat)
    b2 = d2 - nhat * d1
    mu1 = that - chat
    mu2 = that
    mu3 = that + chat

    def combine(m1, m2, m3):
        return np.stack([
            m1 * b1 + m3 * b3,
            m1 * b1 * nhat + m2 * b2 + m3 * b3 * nhat,
            m1 * b1 * mu1 + m3 * b3 * mu3,
        ])

    minus = combine(np.minimum(mu1, 0.0), np.minimum(mu2, 0.0),
                    np.minimum(mu3, 0.0))
    plus = combine(np.maximum(mu1, 0.0), np.maximum(mu2, 0.0),
                   np.maximum(mu3, 0.0))
    return minus, plus


def step_hyperbolic(q, dx, dy, dt, g_r, limiter_id, solid_wall):
    """One wave-propagation step on ghost-filled q.

    Returns (q_new, smax_x, smax_y) with the extreme wave speeds actually
    encountered at interfaces bounding interior cells.  q_new has stale
    ghost cells.
    """
    g = NGHOST
    ncomp, ty, tx = q.shape
    nx = tx - 2 * g
    ny = ty - 2 * g

    # ---- x sweep: interfaces between columns k and k+1 -------------------
    ql = q[:, :, :-1]
    qr = q[:, :, 1:]
    uhat, vhat, chat = _roe_interface(ql, qr, g_r)
    d1 = qr[0] - ql[0]
    d2 = qr[1] - ql[1]
    d3 = qr[2] - ql[2]
    a1 = ((uhat + chat) * d1 - d2) / (2.0 * chat)
    a3 = (d2 - (uhat - chat) * d1) / (2.0 * chat)
    a2 = d3 - vhat * d1
    s1 = uhat - chat
    s2 = uhat
    s3 = uhat + chat
    zeros = np.zeros_like(a1)
    waves_x = np.stack([
        np.stack([a1, a1 * s1, a1 * vhat]),
        np.stack([zeros, zeros, a2]),
        np.stack([a3, a3 * s3, a3 * vhat]),
    ])                                          # (family, comp, ty, tx-1)
    speeds_x = np.stack([s1, s2, s3])

    sneg = np.minimum(speeds_x, 0.0)[:, None]
    spos = np.maximum(speeds_x, 0.0)[:, None]
    amdq = np.einsum("pkji->kji", sneg * waves_x)
    apdq = np.einsum("pkji->kji", spos * waves_x)

    wlim = _limit_waves(waves_x, speeds_x, limiter_id)
    nu = np.abs(speeds_x) * (dt / dx)
    f2 = 0.5 * np.einsum("pkji->kji",
                         (np.abs(speeds_x) * (1.0 - nu))[:, None] * wlim)

    # ---- y sweep: interfaces between rows m and m+1 ----------------------
    qb = q[:, :-1, :]
    qt = q[:, 1:, :]
    ubhat, vbhat, cbhat = _roe_interface(qb, qt, g_r)
    e1 = qt[0] - qb[0]
    e2 = qt[1] - qb[1]
    e3 = qt[2] - qb[2]
    b1 = ((vbhat + cbhat) * e1 - e3) / (2.0 * cbhat)
    b3 = (e3 - (vbhat - cbhat) * e1) / (2.0 * cbhat)
    b2 = e2 - ubhat * e1
    t1 = vbhat - cbhat
    t2 = vbhat
    t3 = vbhat + cbhat
    zerosy = np.zeros_like(b1)
    waves_y = np.stack([
        np.stack([b1, b1 * ubhat, b1 * t1]),
        np.stack([zerosy, b2, zerosy]),
        np.stack([b3, b3 * ubhat, b3 * t3]),
    ])
    speeds_y = np.stack([t1, t2, t3])

    tneg = np.minimum(speeds_y, 0.0)[:, None]
    tpos = np.maximum(speeds_y, 0.0)[:, None]
    bmdq = np.einsum("pkji->kji", tneg * waves_y)
    bpdq = np.einsum("pkji->kji", tpos * waves_y)

    # the y-direction limiter compares along the row (j) axis
    wlim_y = np.swapaxes(
        _limit_waves(np.swapaxes(waves_y, 2, 3), np.swapaxes(speeds_y, 1, 2),
                     limiter_id), 2, 3)
    nuy = np.abs(speeds_y) * (dt / dy)
    g2 = 0.5 * np.einsum("pkji->kji",
                         (np.abs(speeds_y) * (1.0 - nuy))[:, None] * wlim_y)

    # ---- transverse corrections -----------------------------------------
    # x-interface fluctuations split in y feed the y-face correction flux
    bm_am, bp_am = _transverse_split(amdq, uhat, vhat, chat)
    bm_ap, bp_ap = _transverse_split(apdq, uhat, vhat, chat)
    gt = np.zeros((3, ty - 1, tx))
    cx = dt / (2.0 * dx)
    gt[:, :, :-1] -= cx * bp_am[:, :-1, :]
    gt[:, :, :-1] -= cx * bm_am[:, 1:, :]
    gt[:, :, 1:] -= cx * bp_ap[:, :-1, :]
    gt[:, :, 1:] -= cx * bm_ap[:, 1:, :]

    # y-interface fluctuations split in x feed the x-face correction flux
    am_bm, ap_bm = _transverse_split(
        bmdq[[0, 2, 1]], vbhat, ubhat, cbhat)
    am_bp, ap_bp = _transverse_split(
        bpdq[[0, 2, 1]], vbhat, ubhat, cbhat)
    # undo the component swap used to reuse the splitter
    am_bm, ap_bm = am_bm[[0, 2, 1]], ap_bm[[0, 2, 1]]
    am_bp, ap_bp = am_bp[[0, 2, 1]], ap_bp[[0, 2, 1]]
    ft = np.zeros((3, ty, tx - 1))
    cy = dt / (2.0 * dy)
    ft[:, :-1, :] -= cy * ap_bm[:, :, :-1]
    ft[:, :-1, :] -= cy * am_bm[:, :, 1:]
    ft[:, 1:, :] -= cy * ap_bp[:, :, :-1]
    ft[:, 1:, :] -= cy * am_bp[:, :, 1:]

    if solid_wall:
        # no transverse signal through a wall face; required for exact
        # depth conservation with the no-slip ghost fill
        gt[:, g - 1, :] = 0.0
        gt[:, g + ny - 1, :] = 0.0
        ft[:, :, g - 1] = 0.0
        ft[:, :, g + nx - 1] = 0.0

    ftot = f2 + ft
    gtot = g2 + gt

    # ---- interior update -------------------------------------------------
    # grouped as q - (x increment + y increment) so that transposing the
    # field and swapping (hu, hv) commutes with the step bitwise (IEEE
    # addition is commutative; the two increments have mirrored structure)
    J = slice(g, g + ny)
    I = slice(g, g + nx)
    inc_x = ((dt / dx) * (apdq[:, J, g - 1:g + nx - 1] + amdq[:, J, g:g + nx])
             + (dt / dx) * (ftot[:, J, g:g + nx] - ftot[:, J, g - 1:g + nx - 1]))
    inc_y = ((dt / dy) * (bpdq[:, g - 1:g + ny - 1, I] + bmdq[:, g:g + ny, I])
             + (dt / dy) * (gtot[:, g:g + ny, I] - gtot[:, g - 1:g + ny - 1, I]))
    qn = q.copy()
    qn[:, J, I] -= inc_x + inc_y

    smax_x = float(np.max(np.abs(speeds_x[:, J, g - 1:g + nx])))
    smax_y = float(np.max(np.abs(speeds_y[:, g - 1:g + ny, I])))
    return qn, smax_x, smax_y


def _limit_scalar_waves(w, s, kind_id):
    """1-D scalar wave limiter along the last axis."""
    if kind_id == 0:
        return w
    num = np.where(s > 0.0,
                   np.concatenate([np.zeros_like(w[:, :1]), w[:, :-1]], axis=1),
                   np.concatenate([w[:, 1:], np.zeros_like(w[:, :1])], axis=1))
    theta = np.where(w != 0.0, num / np.where(w != 0.0, w, 1.0), 0.0)
    return limiter_phi(theta, kind_id) * w


def step_tracer(c, uf, vf, dx, dy, dt, limiter_id):
    """Color-equation advection step on ghost-filled c.

    uf: x-face normal velocities, shape (ty, tx - 1);
    vf: y-face normal velocities, shape (ty - 1, tx).
    Non-conservative fluctuation form: each face contributes an upwind
    fluctuation s * (C_down - C_up) plus a limited correction flux.
    Returns c_new with stale ghosts.
    """
    g = NGHOST
    ty, tx = c.shape
    nx = tx - 2 * g
    ny = ty - 2 * g

    wx = c[:, 1:] - c[:, :-1]
    wxl = _limit_scalar_waves(wx, uf, limiter_id)
    fx = 0.5 * np.abs(uf) * (1.0 - (dt / dx) * np.abs(uf)) * wxl

    wy = c[1:, :] - c[:-1, :]
    wyl = _limit_scalar_waves(wy.T, vf.T, limiter_id).T
    fy = 0.5 * np.abs(vf) * (1.0 - (dt / dy) * np.abs(vf)) * wyl

    J = slice(g, g + ny)
    I = slice(g, g + nx)
    cn = c.copy()
    cn[J, I] -= (
        (dt / dx) * (np.maximum(uf[J, g - 1:g + nx - 1], 0.0)
                     * wx[J, g - 1:g + nx - 1]
                     + np.minimum(uf[J, g:g + nx], 0.0) * wx[J, g:g + nx])
        + (dt / dy) * (np.maximum(vf[g - 1:g + ny - 1, I], 0.0)
                       * wy[g - 1:g + ny - 1, I]
                       + np.minimum(vf[g:g + ny, I], 0.0) * wy[g:g + ny, I])
        + (dt / dx) * (fx[J, g:g + nx] - fx[J, g - 1:g + nx - 1])
        + (dt / dy) * (fy[g:g + ny, I] - fy[g - 1:g + ny - 1, I])
    )
    return cn
