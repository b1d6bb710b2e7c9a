# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled radial kernels; same contract as ``gravbec._kernels_py``."""

import numpy as np
from libc.math cimport sqrt, M_PI

__all__ = ["BACKEND", "kinetic_apply", "gravity_potential", "energy_terms",
           "effective_potential", "flow_step"]

BACKEND = "cython"

cdef double FOUR_PI = 4.0 * M_PI


cdef inline void _stencil(double dr, double* d0, double* d1, double* d2) noexcept nogil:
    cdef double h2 = dr * dr
    d0[0] = 1.25 / h2
    d1[0] = -2.0 / (3.0 * h2)
    d2[0] = 1.0 / (24.0 * h2)


cdef void _kinetic(const double[::1] u, double dr, double[::1] out) noexcept nogil:
    cdef Py_ssize_t n = u.shape[0], i
    cdef double d0, d1, d2, um2, um1, up1, up2
    _stencil(dr, &d0, &d1, &d2)
    for i in range(n):
        if i >= 2:
            um2 = u[i - 2]
        elif i == 1:
            um2 = 0.0
        else:
            um2 = -u[0]
        um1 = u[i - 1] if i >= 1 else 0.0
        up1 = u[i + 1] if i + 1 < n else 0.0
        up2 = u[i + 2] if i + 2 < n else 0.0
        out[i] = d0 * u[i] + d1 * (um1 + up1) + d2 * (um2 + up2)


cdef void _gravity(const double[::1] u, const double[::1] r, double dr, double g_u,
                   double[::1] out) noexcept nogil:
    cdef Py_ssize_t n = u.shape[0], i
    cdef double inner = 0.0, outer = 0.0, w
    # outer sums first (descending), then inner sums (ascending)
    for i in range(n - 1, -1, -1):
        out[i] = outer
        outer += FOUR_PI * dr * u[i] * u[i] / r[i]
    for i in range(n):
        inner += FOUR_PI * dr * u[i] * u[i]
        out[i] = -g_u * (inner / r[i] + out[i])


def kinetic_apply(double[::1] u, double dr):
    out = np.empty(u.shape[0])
    _kinetic(u, dr, out)
    return out


def gravity_potential(double[::1] u, double[::1] r, double dr, double g_u):
    out = np.empty(u.shape[0])
    _gravity(u, r, dr, g_u, out)
    return out


def energy_terms(double[::1] u, double[::1] r, double dr, double g_s, double g_u,
                 bint trap):
    cdef Py_ssize_t n = u.shape[0], i
    cdef double[::1] phi = np.empty(n)
    cdef double T, V = 0.0, Us = 0.0, Uu = 0.0, u2, s1 = 0.0, s2, d, prev2, prev1
    with nogil:
        # 24 dr^2 u.A.u = 16 S1 - S2 (squared differences; see _kernels_py)
        prev2, prev1 = 0.0, 0.0
        s2 = 2.0 * u[0] * u[0]
        for i in range(n):
            d = u[i] - prev1
            s1 += d * d
            if i > 0:
                d = u[i] - prev2
                s2 += d * d
            prev2, prev1 = prev1, u[i]
        s1 += prev1 * prev1
        s2 += prev2 * prev2 + prev1 * prev1
        T = 16.0 * s1 - s2
        if g_u != 0.0:
            _gravity(u, r, dr, g_u, phi)
        for i in range(n):
            u2 = u[i] * u[i]
            if trap:
                V += r[i] * r[i] * u2
            Us += u2 * u2 / (r[i] * r[i])
            if g_u != 0.0:
                Uu += phi[i] * u2
    return (FOUR_PI * dr * T / (24.0 * dr * dr), 0.5 * FOUR_PI * dr * V,
            0.5 * FOUR_PI * dr * Uu, 0.5 * g_s * FOUR_PI * dr * Us)


def effective_potential(double[::1] u, double[::1] r, double dr, double g_s,
                        double g_u, bint trap):
    cdef Py_ssize_t n = u.shape[0], i
    out = np.empty(n)
    cdef double[::1] v = out
    with nogil:
        if g_u != 0.0:
            _gravity(u, r, dr, g_u, v)
        else:
            for i in range(n):
                v[i] = 0.0
        for i in range(n):
            v[i] += g_s * u[i] * u[i] / (r[i] * r[i])
            if trap:
                v[i] += 0.5 * r[i] * r[i]
    return out


def flow_step(double[::1] u, double[::1] r, double dr, double g_s, double g_u,
              bint trap, double dt):
    cdef Py_ssize_t n = u.shape[0], i
    cdef double[::1] veff = effective_potential(u, r, dr, g_s, g_u, trap)
    cdef double[::1] D = np.empty(n)
    cdef double[::1] l1 = np.empty(n)
    cdef double[::1] l2 = np.empty(n)
    cdef double[::1] invD = np.empty(n)
    out = np.empty(n)
    cdef double[::1] x = out
    cdef double d0, d1, d2, shift = 0.0, diag, rhs_scale, norm = 0.0
    with nogil:
        _stencil(dr, &d0, &d1, &d2)
        for i in range(n):
            if -veff[i] > shift:
                shift = -veff[i]
        rhs_scale = 1.0 / dt + shift
        # LDL^T of the symmetric pentadiagonal matrix with constant off-diagonals
        for i in range(n):
            diag = d0 + veff[i] + shift + 1.0 / dt
            if i == 0:
                diag -= d2
                l1[i] = 0.0
                l2[i] = 0.0
                D[i] = diag
            elif i == 1:
                l2[i] = 0.0
                l1[i] = d1 * invD[0]
                D[i] = diag - l1[i] * d1
            else:
                l2[i] = d2 * invD[i - 2]
                l1[i] = (d1 - l1[i - 1] * d2) * invD[i - 1]
                D[i] = diag - l2[i] * d2 - l1[i] * l1[i] * D[i - 1]
            invD[i] = 1.0 / D[i]
        for i in range(n):
            x[i] = rhs_scale * u[i]
            if i >= 1:
                x[i] -= l1[i] * x[i - 1]
            if i >= 2:
                x[i] -= l2[i] * x[i - 2]
        for i in range(n):
            x[i] *= invD[i]
        for i in range(n - 1, -1, -1):
            if i + 1 < n:
                x[i] -= l1[i + 1] * x[i + 1]
            if i + 2 < n:
                x[i] -= l2[i + 2] * x[i + 2]
        for i in range(n):
            norm += x[i] * x[i]
        norm = 1.0 / sqrt(FOUR_PI * dr * norm)
        for i in range(n):
            x[i] *= norm
    return out
