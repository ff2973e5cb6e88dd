# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of :mod:`gyresw.kernels.pykernels`.

Every arithmetic expression mirrors the numpy fallback exactly (same
operation order, same accumulation order), so the two backends produce
bit-identical results; the parity tests assert this.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

NGHOST = 2


cdef inline double _phi(double theta, int kind_id) nogil:
    cdef double a, b
    if kind_id == 1:                      # minmod
        a = theta if theta < 1.0 else 1.0
        return a if a > 0.0 else 0.0
    if kind_id == 2:                      # mc
        a = 0.5 * (1.0 + theta)
        if a > 2.0:
            a = 2.0
        b = 2.0 * theta
        if a > b:
            a = b
        return a if a > 0.0 else 0.0
    if kind_id == 3:                      # superbee
        a = 2.0 * theta
        if a > 1.0:
            a = 1.0
        if a < 0.0:
            a = 0.0
        b = theta if theta < 2.0 else 2.0
        return a if a > b else b
    return 1.0


cdef inline double _min0(double s) nogil:
    return s if s < 0.0 else 0.0


cdef inline double _max0(double s) nogil:
    return s if s > 0.0 else 0.0


def step_hyperbolic(cnp.ndarray[double, ndim=3] q_in, double dx, double dy,
                    double dt, double g_r, int limiter_id, bint solid_wall):
    cdef int g = NGHOST
    cdef int ty = q_in.shape[1]
    cdef int tx = q_in.shape[2]
    cdef int nx = tx - 2 * g
    cdef int ny = ty - 2 * g
    cdef int txm1 = tx - 1
    cdef int tym1 = ty - 1

    cdef double[:, :, ::1] q = np.ascontiguousarray(q_in)

    cdef double ghalf = g_r * 0.5
    cdef double dtdx = dt / dx
    cdef double dtdy = dt / dy
    cdef double cx = dt / (2.0 * dx)
    cdef double cy = dt / (2.0 * dy)

    # x-sweep storage: waves (family, comp), speeds, Roe averages, fluctuations
    wx_np = np.zeros((3, 3, ty, txm1))
    sx_np = np.zeros((3, ty, txm1))
    uhx_np = np.zeros((ty, txm1))
    vhx_np = np.zeros((ty, txm1))
    chx_np = np.zeros((ty, txm1))
    amdq_np = np.zeros((3, ty, txm1))
    apdq_np = np.zeros((3, ty, txm1))
    cdef double[:, :, :, ::1] wx = wx_np
    cdef double[:, :, ::1] sx = sx_np
    cdef double[:, ::1] uhx = uhx_np
    cdef double[:, ::1] vhx = vhx_np
    cdef double[:, ::1] chx = chx_np
    cdef double[:, :, ::1] amdq = amdq_np
    cdef double[:, :, ::1] apdq = apdq_np

    wy_np = np.zeros((3, 3, tym1, tx))
    sy_np = np.zeros((3, tym1, tx))
    uhy_np = np.zeros((tym1, tx))
    vhy_np = np.zeros((tym1, tx))
    chy_np = np.zeros((tym1, tx))
    bmdq_np = np.zeros((3, tym1, tx))
    bpdq_np = np.zeros((3, tym1, tx))
    cdef double[:, :, :, ::1] wy = wy_np
    cdef double[:, :, ::1] sy = sy_np
    cdef double[:, ::1] uhy = uhy_np
    cdef double[:, ::1] vhy = vhy_np
    cdef double[:, ::1] chy = chy_np
    cdef double[:, :, ::1] bmdq = bmdq_np
    cdef double[:, :, ::1] bpdq = bpdq_np

    # second-order correction fluxes (transverse terms folded in later)
    ftot_np = np.zeros((3, ty, txm1))
    gtot_np = np.zeros((3, tym1, tx))
    cdef double[:, :, ::1] ftot = ftot_np
    cdef double[:, :, ::1] gtot = gtot_np

    # transverse splits of the normal fluctuations
    bm_am_np = np.zeros((3, ty, txm1))
    bp_am_np = np.zeros((3, ty, txm1))
    bm_ap_np = np.zeros((3, ty, txm1))
    bp_ap_np = np.zeros((3, ty, txm1))
    cdef double[:, :, ::1] bm_am = bm_am_np
    cdef double[:, :, ::1] bp_am = bp_am_np
    cdef double[:, :, ::1] bm_ap = bm_ap_np
    cdef double[:, :, ::1] bp_ap = bp_ap_np

    am_bm_np = np.zeros((3, tym1, tx))
    ap_bm_np = np.zeros((3, tym1, tx))
    am_bp_np = np.zeros((3, tym1, tx))
    ap_bp_np = np.zeros((3, tym1, tx))
    cdef double[:, :, ::1] am_bm = am_bm_np
    cdef double[:, :, ::1] ap_bm = ap_bm_np
    cdef double[:, :, ::1] am_bp = am_bp_np
    cdef double[:, :, ::1] ap_bp = ap_bp_np

    qn_np = q_in.copy()
    cdef double[:, :, ::1] qn = qn_np

    cdef int i, j, k, p, c, m
    cdef double hl, hr, sl, sr, wsum, uhat, vhat, chat
    cdef double d1, d2, d3, a1, a2, a3, s1, s2, s3
    cdef double den, num, theta, ph
    cdef double b1, b2, b3, mu1, mu2, mu3, m1, m2, m3
    cdef double asd1, asd2, asd3
    cdef double smax_x = 0.0
    cdef double smax_y = 0.0
    cdef double inc_x, inc_y, acc
    cdef double lw[3][3]
    cdef double co[3]

    # ---- x sweep ---------------------------------------------------------
    for j in range(ty):
        for k in range(txm1):
            hl = q[0, j, k]
            hr = q[0, j, k + 1]
            sl = sqrt(hl)
            sr = sqrt(hr)
            wsum = sl + sr
            uhat = (q[1, j, k] / sl + q[1, j, k + 1] / sr) / wsum
            vhat = (q[2, j, k] / sl + q[2, j, k + 1] / sr) / wsum
            chat = sqrt(ghalf * (hl + hr))
            uhx[j, k] = uhat
            vhx[j, k] = vhat
            chx[j, k] = chat
            d1 = hr - hl
            d2 = q[1, j, k + 1] - q[1, j, k]
            d3 = q[2, j, k + 1] - q[2, j, k]
            a1 = ((uhat + chat) * d1 - d2) / (2.0 * chat)
            a3 = (d2 - (uhat - chat) * d1) / (2.0 * chat)
            a2 = d3 - vhat * d1
            s1 = uhat - chat
            s2 = uhat
            s3 = uhat + chat
            sx[0, j, k] = s1
            sx[1, j, k] = s2
            sx[2, j, k] = s3
            wx[0, 0, j, k] = a1
            wx[0, 1, j, k] = a1 * s1
            wx[0, 2, j, k] = a1 * vhat
            wx[1, 0, j, k] = 0.0
            wx[1, 1, j, k] = 0.0
            wx[1, 2, j, k] = a2
            wx[2, 0, j, k] = a3
            wx[2, 1, j, k] = a3 * s3
            wx[2, 2, j, k] = a3 * vhat
            for c in range(3):
                amdq[c, j, k] = ((_min0(s1) * wx[0, c, j, k]
                                  + _min0(s2) * wx[1, c, j, k])
                                 + _min0(s3) * wx[2, c, j, k])
                apdq[c, j, k] = ((_max0(s1) * wx[0, c, j, k]
                                  + _max0(s2) * wx[1, c, j, k])
                                 + _max0(s3) * wx[2, c, j, k])
            if g <= j < g + ny and g - 1 <= k < g + nx:
                if fabs(s1) > smax_x:
                    smax_x = fabs(s1)
                if fabs(s2) > smax_x:
                    smax_x = fabs(s2)
                if fabs(s3) > smax_x:
                    smax_x = fabs(s3)

    # ---- y sweep ---------------------------------------------------------
    for m in range(tym1):
        for i in range(tx):
            hl = q[0, m, i]
            hr = q[0, m + 1, i]
            sl = sqrt(hl)
            sr = sqrt(hr)
            wsum = sl + sr
            uhat = (q[1, m, i] / sl + q[1, m + 1, i] / sr) / wsum
            vhat = (q[2, m, i] / sl + q[2, m + 1, i] / sr) / wsum
            chat = sqrt(ghalf * (hl + hr))
            uhy[m, i] = uhat
            vhy[m, i] = vhat
            chy[m, i] = chat
            d1 = hr - hl
            d2 = q[1, m + 1, i] - q[1, m, i]
            d3 = q[2, m + 1, i] - q[2, m, i]
            a1 = ((vhat + chat) * d1 - d3) / (2.0 * chat)
            a3 = (d3 - (vhat - chat) * d1) / (2.0 * chat)
            a2 = d2 - uhat * d1
            s1 = vhat - chat
            s2 = vhat
            s3 = vhat + chat
            sy[0, m, i] = s1
            sy[1, m, i] = s2
            sy[2, m, i] = s3
            wy[0, 0, m, i] = a1
            wy[0, 1, m, i] = a1 * uhat
            wy[0, 2, m, i] = a1 * s1
            wy[1, 0, m, i] = 0.0
            wy[1, 1, m, i] = a2
            wy[1, 2, m, i] = 0.0
            wy[2, 0, m, i] = a3
            wy[2, 1, m, i] = a3 * uhat
            wy[2, 2, m, i] = a3 * s3
            for c in range(3):
                bmdq[c, m, i] = ((_min0(s1) * wy[0, c, m, i]
                                  + _min0(s2) * wy[1, c, m, i])
                                 + _min0(s3) * wy[2, c, m, i])
                bpdq[c, m, i] = ((_max0(s1) * wy[0, c, m, i]
                                  + _max0(s2) * wy[1, c, m, i])
                                 + _max0(s3) * wy[2, c, m, i])
            if g - 1 <= m < g + ny and g <= i < g + nx:
                if fabs(s1) > smax_y:
                    smax_y = fabs(s1)
                if fabs(s2) > smax_y:
                    smax_y = fabs(s2)
                if fabs(s3) > smax_y:
                    smax_y = fabs(s3)

    # ---- limited second-order correction fluxes --------------------------
    for j in range(ty):
        for k in range(txm1):
            for p in range(3):
                lw[p][0] = wx[p, 0, j, k]
                lw[p][1] = wx[p, 1, j, k]
                lw[p][2] = wx[p, 2, j, k]
                if limiter_id != 0:
                    # inner products group the momentum components so the
                    # two sweeps stay mirror images (see pykernels)
                    den = (lw[p][0] * lw[p][0]
                           + (lw[p][1] * lw[p][1] + lw[p][2] * lw[p][2]))
                    if den > 0.0:
                        if sx[p, j, k] > 0.0:
                            num = 0.0
                            if k >= 1:
                                num = (lw[p][0] * wx[p, 0, j, k - 1]
                                       + (lw[p][1] * wx[p, 1, j, k - 1]
                                          + lw[p][2] * wx[p, 2, j, k - 1]))
                        else:
                            num = 0.0
                            if k < txm1 - 1:
                                num = (lw[p][0] * wx[p, 0, j, k + 1]
                                       + (lw[p][1] * wx[p, 1, j, k + 1]
                                          + lw[p][2] * wx[p, 2, j, k + 1]))
                        theta = num / den
                        ph = _phi(theta, limiter_id)
                        lw[p][0] = ph * lw[p][0]
                        lw[p][1] = ph * lw[p][1]
                        lw[p][2] = ph * lw[p][2]
                co[p] = fabs(sx[p, j, k]) * (1.0 - fabs(sx[p, j, k]) * dtdx)
            for c in range(3):
                ftot[c, j, k] = 0.5 * ((co[0] * lw[0][c] + co[1] * lw[1][c])
                                       + co[2] * lw[2][c])

    for m in range(tym1):
        for i in range(tx):
            for p in range(3):
                lw[p][0] = wy[p, 0, m, i]
                lw[p][1] = wy[p, 1, m, i]
                lw[p][2] = wy[p, 2, m, i]
                if limiter_id != 0:
                    den = (lw[p][0] * lw[p][0]
                           + (lw[p][1] * lw[p][1] + lw[p][2] * lw[p][2]))
                    if den > 0.0:
                        if sy[p, m, i] > 0.0:
                            num = 0.0
                            if m >= 1:
                                num = (lw[p][0] * wy[p, 0, m - 1, i]
                                       + (lw[p][1] * wy[p, 1, m - 1, i]
                                          + lw[p][2] * wy[p, 2, m - 1, i]))
                        else:
                            num = 0.0
                            if m < tym1 - 1:
                                num = (lw[p][0] * wy[p, 0, m + 1, i]
                                       + (lw[p][1] * wy[p, 1, m + 1, i]
                                          + lw[p][2] * wy[p, 2, m + 1, i]))
                        theta = num / den
                        ph = _phi(theta, limiter_id)
                        lw[p][0] = ph * lw[p][0]
                        lw[p][1] = ph * lw[p][1]
                        lw[p][2] = ph * lw[p][2]
                co[p] = fabs(sy[p, m, i]) * (1.0 - fabs(sy[p, m, i]) * dtdy)
            for c in range(3):
                gtot[c, m, i] = 0.5 * ((co[0] * lw[0][c] + co[1] * lw[1][c])
                                       + co[2] * lw[2][c])

    # ---- transverse splits of the normal fluctuations --------------------
    for j in range(ty):
        for k in range(txm1):
            uhat = uhx[j, k]
            vhat = vhx[j, k]
            chat = chx[j, k]
            mu1 = vhat - chat
            mu2 = vhat
            mu3 = vhat + chat

            asd1 = amdq[0, j, k]
            asd2 = amdq[1, j, k]
            asd3 = amdq[2, j, k]
            b1 = ((vhat + chat) * asd1 - asd3) / (2.0 * chat)
            b3 = (asd3 - (vhat - chat) * asd1) / (2.0 * chat)
            b2 = asd2 - uhat * asd1
            m1 = _min0(mu1)
            m2 = _min0(mu2)
            m3 = _min0(mu3)
            bm_am[0, j, k] = m1 * b1 + m3 * b3
            bm_am[1, j, k] = m1 * b1 * uhat + m2 * b2 + m3 * b3 * uhat
            bm_am[2, j, k] = m1 * b1 * mu1 + m3 * b3 * mu3
            m1 = _max0(mu1)
            m2 = _max0(mu2)
            m3 = _max0(mu3)
            bp_am[0, j, k] = m1 * b1 + m3 * b3
            bp_am[1, j, k] = m1 * b1 * uhat + m2 * b2 + m3 * b3 * uhat
            bp_am[2, j, k] = m1 * b1 * mu1 + m3 * b3 * mu3

            asd1 = apdq[0, j, k]
            asd2 = apdq[1, j, k]
            asd3 = apdq[2, j, k]
            b1 = ((vhat + chat) * asd1 - asd3) / (2.0 * chat)
            b3 = (asd3 - (vhat - chat) * asd1) / (2.0 * chat)
            b2 = asd2 - uhat * asd1
            m1 = _min0(mu1)
            m2 = _min0(mu2)
            m3 = _min0(mu3)
            bm_ap[0, j, k] = m1 * b1 + m3 * b3
            bm_ap[1, j, k] = m1 * b1 * uhat + m2 * b2 + m3 * b3 * uhat
            bm_ap[2, j, k] = m1 * b1 * mu1 + m3 * b3 * mu3
            m1 = _max0(mu1)
            m2 = _max0(mu2)
            m3 = _max0(mu3)
            bp_ap[0, j, k] = m1 * b1 + m3 * b3
            bp_ap[1, j, k] = m1 * b1 * uhat + m2 * b2 + m3 * b3 * uhat
            bp_ap[2, j, k] = m1 * b1 * mu1 + m3 * b3 * mu3

    for m in range(tym1):
        for i in range(tx):
            uhat = uhy[m, i]
            vhat = vhy[m, i]
            chat = chy[m, i]
            mu1 = uhat - chat
            mu2 = uhat
            mu3 = uhat + chat
            # split in the x eigenbasis; components permuted as in pykernels
            asd1 = bmdq[0, m, i]
            asd2 = bmdq[2, m, i]
            asd3 = bmdq[1, m, i]
            b1 = ((uhat + chat) * asd1 - asd3) / (2.0 * chat)
            b3 = (asd3 - (uhat - chat) * asd1) / (2.0 * chat)
            b2 = asd2 - vhat * asd1
            m1 = _min0(mu1)
            m2 = _min0(mu2)
            m3 = _min0(mu3)
            am_bm[0, m, i] = m1 * b1 + m3 * b3
            am_bm[2, m, i] = m1 * b1 * vhat + m2 * b2 + m3 * b3 * vhat
            am_bm[1, m, i] = m1 * b1 * mu1 + m3 * b3 * mu3
            m1 = _max0(mu1)
            m2 = _max0(mu2)
            m3 = _max0(mu3)
            ap_bm[0, m, i] = m1 * b1 + m3 * b3
            ap_bm[2, m, i] = m1 * b1 * vhat + m2 * b2 + m3 * b3 * vhat
            ap_bm[1, m, i] = m1 * b1 * mu1 + m3 * b3 * mu3

            asd1 = bpdq[0, m, i]
            asd2 = bpdq[2, m, i]
            asd3 = bpdq[1, m, i]
            b1 = ((uhat + chat) * asd1 - asd3) / (2.0 * chat)
            b3 = (asd3 - (uhat - chat) * asd1) / (2.0 * chat)
            b2 = asd2 - vhat * asd1
            m1 = _min0(mu1)
            m2 = _min0(mu2)
            m3 = _min0(mu3)
            am_bp[0, m, i] = m1 * b1 + m3 * b3
            am_bp[2, m, i] = m1 * b1 * vhat + m2 * b2 + m3 * b3 * vhat
            am_bp[1, m, i] = m1 * b1 * mu1 + m3 * b3 * mu3
            m1 = _max0(mu1)
            m2 = _max0(mu2)
            m3 = _max0(mu3)
            ap_bp[0, m, i] = m1 * b1 + m3 * b3
            ap_bp[2, m, i] = m1 * b1 * vhat + m2 * b2 + m3 * b3 * vhat
            ap_bp[1, m, i] = m1 * b1 * mu1 + m3 * b3 * mu3

    # ---- fold transverse terms into the correction fluxes ----------------
    # accumulation order matches the numpy -= sequence; wall faces carry no
    # transverse signal (required for exact depth conservation)
    for c in range(3):
        for m in range(tym1):
            for i in range(tx):
                acc = 0.0
                if not (solid_wall and (m == g - 1 or m == g + ny - 1)):
                    if i < txm1:
                        acc = acc - cx * bp_am[c, m, i]
                        acc = acc - cx * bm_am[c, m + 1, i]
                    if i >= 1:
                        acc = acc - cx * bp_ap[c, m, i - 1]
                        acc = acc - cx * bm_ap[c, m + 1, i - 1]
                gtot[c, m, i] = gtot[c, m, i] + acc

    for c in range(3):
        for j in range(ty):
            for k in range(txm1):
                acc = 0.0
                if not (solid_wall and (k == g - 1 or k == g + nx - 1)):
                    if j < tym1:
                        acc = acc - cy * ap_bm[c, j, k]
                        acc = acc - cy * am_bm[c, j, k + 1]
                    if j >= 1:
                        acc = acc - cy * ap_bp[c, j - 1, k]
                        acc = acc - cy * am_bp[c, j - 1, k + 1]
                ftot[c, j, k] = ftot[c, j, k] + acc

    # ---- interior update -------------------------------------------------
    for c in range(3):
        for j in range(g, g + ny):
            for i in range(g, g + nx):
                inc_x = (dtdx * (apdq[c, j, i - 1] + amdq[c, j, i])
                         + dtdx * (ftot[c, j, i] - ftot[c, j, i - 1]))
                inc_y = (dtdy * (bpdq[c, j - 1, i] + bmdq[c, j, i])
                         + dtdy * (gtot[c, j, i] - gtot[c, j - 1, i]))
                qn[c, j, i] = q[c, j, i] - (inc_x + inc_y)

    return qn_np, smax_x, smax_y


def step_tracer(cnp.ndarray[double, ndim=2] c_in,
                cnp.ndarray[double, ndim=2] uf_in,
                cnp.ndarray[double, ndim=2] vf_in,
                double dx, double dy, double dt, int limiter_id):
    cdef int g = NGHOST
    cdef int ty = c_in.shape[0]
    cdef int tx = c_in.shape[1]
    cdef int nx = tx - 2 * g
    cdef int ny = ty - 2 * g
    cdef int txm1 = tx - 1
    cdef int tym1 = ty - 1

    cdef double[:, ::1] cc = np.ascontiguousarray(c_in)
    cdef double[:, ::1] uf = np.ascontiguousarray(uf_in)
    cdef double[:, ::1] vf = np.ascontiguousarray(vf_in)

    cdef double dtdx = dt / dx
    cdef double dtdy = dt / dy

    wx_np = np.zeros((ty, txm1))
    fx_np = np.zeros((ty, txm1))
    wy_np = np.zeros((tym1, tx))
    fy_np = np.zeros((tym1, tx))
    cdef double[:, ::1] wx = wx_np
    cdef double[:, ::1] fx = fx_np
    cdef double[:, ::1] wy = wy_np
    cdef double[:, ::1] fy = fy_np

    cn_np = c_in.copy()
    cdef double[:, ::1] cn = cn_np

    cdef int i, j, k, m
    cdef double w, s, num, theta, wl, A, B, C, D

    for j in range(ty):
        for k in range(txm1):
            wx[j, k] = cc[j, k + 1] - cc[j, k]
    for m in range(tym1):
        for i in range(tx):
            wy[m, i] = cc[m + 1, i] - cc[m, i]

    for j in range(ty):
        for k in range(txm1):
            w = wx[j, k]
            s = uf[j, k]
            wl = w
            if limiter_id != 0:
                if w != 0.0:
                    if s > 0.0:
                        num = wx[j, k - 1] if k >= 1 else 0.0
                    else:
                        num = wx[j, k + 1] if k < txm1 - 1 else 0.0
                    theta = num / w
                else:
                    theta = 0.0
                wl = _phi(theta, limiter_id) * w
            fx[j, k] = 0.5 * fabs(s) * (1.0 - dtdx * fabs(s)) * wl

    for m in range(tym1):
        for i in range(tx):
            w = wy[m, i]
            s = vf[m, i]
            wl = w
            if limiter_id != 0:
                if w != 0.0:
                    if s > 0.0:
                        num = wy[m - 1, i] if m >= 1 else 0.0
                    else:
                        num = wy[m + 1, i] if m < tym1 - 1 else 0.0
                    theta = num / w
                else:
                    theta = 0.0
                wl = _phi(theta, limiter_id) * w
            fy[m, i] = 0.5 * fabs(s) * (1.0 - dtdy * fabs(s)) * wl

    for j in range(g, g + ny):
        for i in range(g, g + nx):
            A = dtdx * (_max0(uf[j, i - 1]) * wx[j, i - 1]
                        + _min0(uf[j, i]) * wx[j, i])
            B = dtdy * (_max0(vf[j - 1, i]) * wy[j - 1, i]
                        + _min0(vf[j, i]) * wy[j, i])
            C = dtdx * (fx[j, i] - fx[j, i - 1])
            D = dtdy * (fy[j, i] - fy[j - 1, i])
            cn[j, i] = cc[j, i] - (((A + B) + C) + D)

    return cn_np
