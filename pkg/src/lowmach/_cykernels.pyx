# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-face flux kernels; same contracts as lowmach._pykernels.

Divergences are differences of shared face fluxes so that cell sums
telescope; face index i holds the face between cell i and i+1 (periodic).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport expm1, fabs, log1p, pow

cnp.import_array()

BACKEND = "cython"


cdef inline double _rgmean(double rk, double rl, double g) noexcept nogil:
    # jumps via expm1/log1p: no cancellation for nearly equal states
    cdef double zk = pow(rk, g - 1.0)
    cdef double logr = log1p((rl - rk) / rk)
    cdef double den = zk * expm1((g - 1.0) * logr)
    cdef double tol = 1e-12 * (zk if zk > 1.0 else 1.0)
    if fabs(den) < tol:
        return 0.5 * (rk + rl)
    return (g - 1.0) / g * pow(rk, g) * expm1(g * logr) / den


cdef inline double _minmod(double a, double b) noexcept nogil:
    if a * b <= 0.0:
        return 0.0
    if a > 0.0:
        return a if a < b else b
    return a if a > b else b


cdef double[::1] _as1d(arr):
    return np.ascontiguousarray(arr, dtype=np.float64)


cdef double[:, ::1] _as2d(arr):
    return np.ascontiguousarray(arr, dtype=np.float64)


def rho_gamma_mean(rho_k, rho_l, double gamma):
    """Entropy-conserving density mean; scalar fast path, arrays via numpy."""
    if np.isscalar(rho_k) and np.isscalar(rho_l):
        return _rgmean(rho_k, rho_l, gamma)
    from . import _pykernels
    return _pykernels.rho_gamma_mean(rho_k, rho_l, gamma)


# ---------------------------------------------------------------- 1D kernels


def central_div_1d(f, double dx):
    cdef double[::1] fv = _as1d(f)
    cdef Py_ssize_t n = fv.shape[0], i
    out_arr = np.empty(n)
    flux_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] flux = flux_arr
    for i in range(n - 1):
        flux[i] = 0.5 * (fv[i] + fv[i + 1])
    flux[n - 1] = 0.5 * (fv[n - 1] + fv[0])
    out[0] = (flux[0] - flux[n - 1]) / dx
    for i in range(1, n):
        out[i] = (flux[i] - flux[i - 1]) / dx
    return out_arr


def laplacian_1d(p, double dx):
    cdef double[::1] pv = _as1d(p)
    cdef Py_ssize_t n = pv.shape[0], i
    out_arr = np.empty(n)
    jump_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] jump = jump_arr
    cdef double dx2 = dx * dx
    for i in range(n - 1):
        jump[i] = pv[i + 1] - pv[i]
    jump[n - 1] = pv[0] - pv[n - 1]
    out[0] = (jump[0] - jump[n - 1]) / dx2
    for i in range(1, n):
        out[i] = (jump[i] - jump[i - 1]) / dx2
    return out_arr


def upwind_mass_div_1d(rho, u, double dx):
    cdef double[::1] r = _as1d(rho)
    cdef double[::1] uv = _as1d(u)
    cdef Py_ssize_t n = r.shape[0], i, ip
    out_arr = np.empty(n)
    flux_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] flux = flux_arr
    cdef double a, ap, am
    for i in range(n):
        ip = i + 1 if i + 1 < n else 0
        a = 0.5 * (uv[i] + uv[ip])
        ap = 0.5 * (a + fabs(a))
        am = 0.5 * (a - fabs(a))
        flux[i] = r[i] * ap + r[ip] * am
    out[0] = (flux[0] - flux[n - 1]) / dx
    for i in range(1, n):
        out[i] = (flux[i] - flux[i - 1]) / dx
    return out_arr


def upwind_conv_div_1d(rho, u, double dx):
    cdef double[::1] r = _as1d(rho)
    cdef double[::1] uv = _as1d(u)
    cdef Py_ssize_t n = r.shape[0], i, ip
    out_arr = np.empty(n)
    flux_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] flux = flux_arr
    cdef double a, ap, am
    for i in range(n):
        ip = i + 1 if i + 1 < n else 0
        a = 0.5 * (uv[i] + uv[ip])
        ap = 0.5 * (a + fabs(a))
        am = 0.5 * (a - fabs(a))
        flux[i] = r[i] * uv[i] * ap + r[ip] * uv[ip] * am
    out[0] = (flux[0] - flux[n - 1]) / dx
    for i in range(1, n):
        out[i] = (flux[i] - flux[i - 1]) / dx
    return out_arr


def ec_conv_div_1d(rho, u, double gamma, double dx):
    cdef double[::1] r = _as1d(rho)
    cdef double[::1] uv = _as1d(u)
    cdef Py_ssize_t n = r.shape[0], i, ip
    out_arr = np.empty(n)
    flux_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] flux = flux_arr
    cdef double a
    for i in range(n):
        ip = i + 1 if i + 1 < n else 0
        a = 0.5 * (uv[i] + uv[ip])
        flux[i] = _rgmean(r[i], r[ip], gamma) * a * a
    out[0] = (flux[0] - flux[n - 1]) / dx
    for i in range(1, n):
        out[i] = (flux[i] - flux[i - 1]) / dx
    return out_arr


def es_conv_div_1d(rho, u, double gamma, double q, int order, double dx):
    cdef double[::1] r = _as1d(rho)
    cdef double[::1] uv = _as1d(u)
    cdef Py_ssize_t n = r.shape[0], i, ip, im
    out_arr = np.empty(n)
    flux_arr = np.empty(n)
    slope_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef double[::1] flux = flux_arr
    cdef double[::1] slope = slope_arr
    cdef double a, du
    if order == 2:
        for i in range(n):
            ip = i + 1 if i + 1 < n else 0
            im = i - 1 if i > 0 else n - 1
            slope[i] = _minmod(uv[i] - uv[im], uv[ip] - uv[i])
    for i in range(n):
        ip = i + 1 if i + 1 < n else 0
        a = 0.5 * (uv[i] + uv[ip])
        if order == 2:
            du = (uv[ip] - 0.5 * slope[ip]) - (uv[i] + 0.5 * slope[i])
        else:
            du = uv[ip] - uv[i]
        flux[i] = _rgmean(r[i], r[ip], gamma) * a * a - 0.5 * q * fabs(a) * du
    out[0] = (flux[0] - flux[n - 1]) / dx
    for i in range(1, n):
        out[i] = (flux[i] - flux[i - 1]) / dx
    return out_arr


def double_div_1d(s, double dx):
    return laplacian_1d(s, dx)


# ---------------------------------------------------------------- 2D kernels


def double_div_2d(t11, t12, t22, double dx1, double dx2):
    # compact second derivatives in the diagonal blocks, central cross in
    # the mixed block (applied twice: the tensor is symmetric)
    cdef double[:, ::1] a11 = _as2d(t11)
    cdef double[:, ::1] a12 = _as2d(t12)
    cdef double[:, ::1] a22 = _as2d(t22)
    cdef Py_ssize_t n1 = a11.shape[0], n2 = a11.shape[1], i, j, ip, jp, im, jm
    out_arr = np.empty((n1, n2))
    work_arr = np.empty((n1, n2))
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] work = work_arr
    cdef double s1 = dx1 * dx1, s2 = dx2 * dx2
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            work[i, j] = a11[ip, j] - a11[i, j]
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            out[i, j] = (work[i, j] - work[im, j]) / s1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            work[i, j] = a22[i, jp] - a22[i, j]
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            out[i, j] += (work[i, j] - work[i, jm]) / s2
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            jm = j - 1 if j > 0 else n2 - 1
            work[i, j] = (a12[i, jp] - a12[i, jm]) / (2.0 * dx2)
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            out[i, j] += (work[ip, j] - work[im, j]) / dx1
    return out_arr


def central_div_2d(f1, f2, double dx1, double dx2):
    cdef double[:, ::1] a1 = _as2d(f1)
    cdef double[:, ::1] a2 = _as2d(f2)
    cdef Py_ssize_t n1 = a1.shape[0], n2 = a1.shape[1], i, j, ip, jp, im, jm
    out_arr = np.empty((n1, n2))
    flux_arr = np.empty((n1, n2))
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] flux = flux_arr
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            flux[i, j] = 0.5 * (a1[i, j] + a1[ip, j])
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            out[i, j] = (flux[i, j] - flux[im, j]) / dx1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            flux[i, j] = 0.5 * (a2[i, j] + a2[i, jp])
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            out[i, j] += (flux[i, j] - flux[i, jm]) / dx2
    return out_arr


def central_grad_2d(p, double dx1, double dx2):
    cdef double[:, ::1] pv = _as2d(p)
    cdef Py_ssize_t n1 = pv.shape[0], n2 = pv.shape[1], i, j, ip, jp, im, jm
    g1_arr = np.empty((n1, n2))
    g2_arr = np.empty((n1, n2))
    flux_arr = np.empty((n1, n2))
    cdef double[:, ::1] g1 = g1_arr
    cdef double[:, ::1] g2 = g2_arr
    cdef double[:, ::1] flux = flux_arr
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            flux[i, j] = 0.5 * (pv[i, j] + pv[ip, j])
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            g1[i, j] = (flux[i, j] - flux[im, j]) / dx1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            flux[i, j] = 0.5 * (pv[i, j] + pv[i, jp])
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            g2[i, j] = (flux[i, j] - flux[i, jm]) / dx2
    return g1_arr, g2_arr


def laplacian_2d(p, double dx1, double dx2):
    cdef double[:, ::1] pv = _as2d(p)
    cdef Py_ssize_t n1 = pv.shape[0], n2 = pv.shape[1], i, j, ip, jp, im, jm
    out_arr = np.empty((n1, n2))
    jump_arr = np.empty((n1, n2))
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] jump = jump_arr
    cdef double s1 = dx1 * dx1, s2 = dx2 * dx2
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            jump[i, j] = pv[ip, j] - pv[i, j]
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            out[i, j] = (jump[i, j] - jump[im, j]) / s1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            jump[i, j] = pv[i, jp] - pv[i, j]
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            out[i, j] += (jump[i, j] - jump[i, jm]) / s2
    return out_arr


def upwind_mass_div_2d(rho, u1, u2, double dx1, double dx2):
    cdef double[:, ::1] r = _as2d(rho)
    cdef double[:, ::1] v1 = _as2d(u1)
    cdef double[:, ::1] v2 = _as2d(u2)
    cdef Py_ssize_t n1 = r.shape[0], n2 = r.shape[1], i, j, ip, jp, im, jm
    out_arr = np.empty((n1, n2))
    flux_arr = np.empty((n1, n2))
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] flux = flux_arr
    cdef double a, ap, am
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            a = 0.5 * (v1[i, j] + v1[ip, j])
            ap = 0.5 * (a + fabs(a))
            am = 0.5 * (a - fabs(a))
            flux[i, j] = r[i, j] * ap + r[ip, j] * am
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            out[i, j] = (flux[i, j] - flux[im, j]) / dx1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            a = 0.5 * (v2[i, j] + v2[i, jp])
            ap = 0.5 * (a + fabs(a))
            am = 0.5 * (a - fabs(a))
            flux[i, j] = r[i, j] * ap + r[i, jp] * am
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            out[i, j] += (flux[i, j] - flux[i, jm]) / dx2
    return out_arr


def upwind_conv_div_2d(rho, u1, u2, double dx1, double dx2):
    cdef double[:, ::1] r = _as2d(rho)
    cdef double[:, ::1] v1 = _as2d(u1)
    cdef double[:, ::1] v2 = _as2d(u2)
    cdef Py_ssize_t n1 = r.shape[0], n2 = r.shape[1], i, j, ip, jp, im, jm
    d1_arr = np.empty((n1, n2))
    d2_arr = np.empty((n1, n2))
    f1_arr = np.empty((n1, n2))
    f2_arr = np.empty((n1, n2))
    cdef double[:, ::1] d1 = d1_arr
    cdef double[:, ::1] d2 = d2_arr
    cdef double[:, ::1] f1 = f1_arr
    cdef double[:, ::1] f2 = f2_arr
    cdef double a, ap, am
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            a = 0.5 * (v1[i, j] + v1[ip, j])
            ap = 0.5 * (a + fabs(a))
            am = 0.5 * (a - fabs(a))
            f1[i, j] = r[i, j] * v1[i, j] * ap + r[ip, j] * v1[ip, j] * am
            f2[i, j] = r[i, j] * v2[i, j] * ap + r[ip, j] * v2[ip, j] * am
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            d1[i, j] = (f1[i, j] - f1[im, j]) / dx1
            d2[i, j] = (f2[i, j] - f2[im, j]) / dx1
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            a = 0.5 * (v2[i, j] + v2[i, jp])
            ap = 0.5 * (a + fabs(a))
            am = 0.5 * (a - fabs(a))
            f1[i, j] = r[i, j] * v1[i, j] * ap + r[i, jp] * v1[i, jp] * am
            f2[i, j] = r[i, j] * v2[i, j] * ap + r[i, jp] * v2[i, jp] * am
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            d1[i, j] += (f1[i, j] - f1[i, jm]) / dx2
            d2[i, j] += (f2[i, j] - f2[i, jm]) / dx2
    return d1_arr, d2_arr


def ec_conv_div_2d(rho, u1, u2, double gamma, double dx1, double dx2):
    return es_conv_div_2d(rho, u1, u2, gamma, 0.0, 1, dx1, dx2)


def es_conv_div_2d(rho, u1, u2, double gamma, double q, int order,
                   double dx1, double dx2):
    cdef double[:, ::1] r = _as2d(rho)
    cdef double[:, ::1] v1 = _as2d(u1)
    cdef double[:, ::1] v2 = _as2d(u2)
    cdef Py_ssize_t n1 = r.shape[0], n2 = r.shape[1], i, j, ip, jp, im, jm
    d1_arr = np.empty((n1, n2))
    d2_arr = np.empty((n1, n2))
    f1_arr = np.empty((n1, n2))
    f2_arr = np.empty((n1, n2))
    s1_arr = np.zeros((n1, n2))
    s2_arr = np.zeros((n1, n2))
    cdef double[:, ::1] d1 = d1_arr
    cdef double[:, ::1] d2 = d2_arr
    cdef double[:, ::1] f1 = f1_arr
    cdef double[:, ::1] f2 = f2_arr
    cdef double[:, ::1] s1 = s1_arr
    cdef double[:, ::1] s2 = s2_arr
    cdef double a, lam, mean, du1, du2

    if order == 2:  # minmod slopes of both velocity components along x1
        for i in range(n1):
            ip = i + 1 if i + 1 < n1 else 0
            im = i - 1 if i > 0 else n1 - 1
            for j in range(n2):
                s1[i, j] = _minmod(v1[i, j] - v1[im, j], v1[ip, j] - v1[i, j])
                s2[i, j] = _minmod(v2[i, j] - v2[im, j], v2[ip, j] - v2[i, j])
    for i in range(n1):
        ip = i + 1 if i + 1 < n1 else 0
        for j in range(n2):
            a = 0.5 * (v1[i, j] + v1[ip, j])
            mean = _rgmean(r[i, j], r[ip, j], gamma)
            lam = 0.5 * q * fabs(a)
            if order == 2:
                du1 = (v1[ip, j] - 0.5 * s1[ip, j]) - (v1[i, j] + 0.5 * s1[i, j])
                du2 = (v2[ip, j] - 0.5 * s2[ip, j]) - (v2[i, j] + 0.5 * s2[i, j])
            else:
                du1 = v1[ip, j] - v1[i, j]
                du2 = v2[ip, j] - v2[i, j]
            f1[i, j] = mean * a * (0.5 * (v1[i, j] + v1[ip, j])) - lam * du1
            f2[i, j] = mean * a * (0.5 * (v2[i, j] + v2[ip, j])) - lam * du2
    for i in range(n1):
        im = i - 1 if i > 0 else n1 - 1
        for j in range(n2):
            d1[i, j] = (f1[i, j] - f1[im, j]) / dx1
            d2[i, j] = (f2[i, j] - f2[im, j]) / dx1

    if order == 2:  # slopes along x2
        for i in range(n1):
            for j in range(n2):
                jp = j + 1 if j + 1 < n2 else 0
                jm = j - 1 if j > 0 else n2 - 1
                s1[i, j] = _minmod(v1[i, j] - v1[i, jm], v1[i, jp] - v1[i, j])
                s2[i, j] = _minmod(v2[i, j] - v2[i, jm], v2[i, jp] - v2[i, j])
    for i in range(n1):
        for j in range(n2):
            jp = j + 1 if j + 1 < n2 else 0
            a = 0.5 * (v2[i, j] + v2[i, jp])
            mean = _rgmean(r[i, j], r[i, jp], gamma)
            lam = 0.5 * q * fabs(a)
            if order == 2:
                du1 = (v1[i, jp] - 0.5 * s1[i, jp]) - (v1[i, j] + 0.5 * s1[i, j])
                du2 = (v2[i, jp] - 0.5 * s2[i, jp]) - (v2[i, j] + 0.5 * s2[i, j])
            else:
                du1 = v1[i, jp] - v1[i, j]
                du2 = v2[i, jp] - v2[i, j]
            f1[i, j] = mean * a * (0.5 * (v1[i, j] + v1[i, jp])) - lam * du1
            f2[i, j] = mean * a * (0.5 * (v2[i, j] + v2[i, jp])) - lam * du2
    for i in range(n1):
        for j in range(n2):
            jm = j - 1 if j > 0 else n2 - 1
            d1[i, j] += (f1[i, j] - f1[i, jm]) / dx2
            d2[i, j] += (f2[i, j] - f2[i, jm]) / dx2
    return d1_arr, d2_arr
