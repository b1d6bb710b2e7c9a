"""NumPy/SciPy radial kernels (fallback for the compiled ``_kernels_cy``).

Every function works on the reduced radial function ``u = r * psi`` of a
per-particle normalized state, ``4 pi dr sum(u**2) = 1``, on the grid
``r_i = i dr`` (i = 1..n).  The kinetic operator is the five-point
fourth-order Laplacian with the odd reflection ``u(-r) = -u(r)`` at the
origin and a hard wall after the last point.
"""

import math

import numpy as np
from scipy.linalg import solveh_banded

__all__ = ["BACKEND", "kinetic_apply", "gravity_potential", "energy_terms",
           "effective_potential", "flow_step"]

BACKEND = "python"

FOUR_PI = 4.0 * math.pi


def _stencil(dr):
    # -1/2 * (-1, 16, -30, 16, -1) / (12 dr^2)
    h2 = dr * dr
    return 1.25 / h2, -2.0 / (3.0 * h2), 1.0 / (24.0 * h2)


def kinetic_apply(u, dr):
    """A u with A = -(1/2) d^2/dr^2."""
    n = u.shape[0]
    p = np.empty(n + 4)
    p[0] = -u[0]
    p[1] = 0.0
    p[2:n + 2] = u
    p[n + 2:] = 0.0
    d0, d1, d2 = _stencil(dr)
    return d0 * p[2:n + 2] + d1 * (p[1:n + 1] + p[3:n + 3]) + d2 * (p[0:n] + p[4:n + 4])


def gravity_potential(u, r, dr, g_u):
    """Attractive Hartree term -g_u * sum_j w_j / max(r_i, r_j), w_j = shell weights."""
    w = FOUR_PI * dr * u * u
    inner = np.cumsum(w)
    outer_terms = w / r
    outer = np.cumsum(outer_terms[::-1])[::-1] - outer_terms
    return -g_u * (inner / r + outer)


def kinetic_energy(u, dr):
    """u.A.u written with squared differences.

    The direct product loses ~1e-16 * d0 * |u|^2 to cancellation, which near
    convergence exceeds the energy decrease of a descent step.  Expanding the
    stencil gives 24 dr^2 u.A.u = 16 S1 - S2 with S1, S2 the sums of squared
    first and second neighbour differences (odd reflection adds 2 u_0^2).
    """
    p = np.zeros(u.shape[0] + 3)
    p[1:-2] = u
    s1 = float(np.sum(np.diff(p) ** 2))
    s2 = float(np.sum((p[2:] - p[:-2]) ** 2)) + 2.0 * float(u[0]) ** 2
    return FOUR_PI * dr * (16.0 * s1 - s2) / (24.0 * dr * dr)


def energy_terms(u, r, dr, g_s, g_u, trap):
    """Per-particle (T, V_ext, U_u, U_s)."""
    T = kinetic_energy(u, dr)
    u2 = u * u
    V = FOUR_PI * dr * 0.5 * float(np.dot(r * r, u2)) if trap else 0.0
    Us = 0.5 * g_s * FOUR_PI * dr * float(np.dot(u2, u2 / (r * r)))
    Uu = 0.0
    if g_u != 0.0:
        Uu = 0.5 * FOUR_PI * dr * float(np.dot(gravity_potential(u, r, dr, g_u), u2))
    return T, V, Uu, Us


def effective_potential(u, r, dr, g_s, g_u, trap):
    veff = g_s * (u / r) ** 2
    if trap:
        veff = veff + 0.5 * r * r
    if g_u != 0.0:
        veff = veff + gravity_potential(u, r, dr, g_u)
    return veff


def flow_step(u, r, dr, g_s, g_u, trap, dt):
    """One semi-implicit normalized gradient-flow step.

    Solves (1/dt + s + A + V_eff[u]) u* = (1/dt + s) u with the shift
    s = max(0, -min V_eff) keeping the matrix positive definite, then
    renormalizes u*.
    """
    n = u.shape[0]
    veff = effective_potential(u, r, dr, g_s, g_u, trap)
    shift = max(0.0, -float(veff.min()))
    d0, d1, d2 = _stencil(dr)
    ab = np.empty((3, n))
    ab[0, :] = d2
    ab[1, :] = d1
    ab[2, :] = d0 + veff + shift + 1.0 / dt
    ab[2, 0] -= d2          # odd reflection at the origin
    new = solveh_banded(ab, (1.0 / dt + shift) * u, check_finite=False)
    return new / math.sqrt(FOUR_PI * dr * float(np.dot(new, new)))
