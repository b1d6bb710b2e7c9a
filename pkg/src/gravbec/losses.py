"""Condensate depletion by the oscillating r^-3 interference terms.

Cross terms between beams of different frequency leave, after time
averaging, a residual quasi-static term

    A(r) = -3 u x y / (q^2 r^5)

oscillating at the beat frequency Omega.  In a homogeneous gas it creates
atom pairs at momenta k = sqrt(m Omega / hbar) at the golden-rule rate

    d|Psi|^2/dt = -<|A(k)|^2> / (6 pi) |Psi|^4 (m / hbar^2)^(3/2) sqrt(Omega / hbar)

with <|A(k)|^2> the angular average of the squared Fourier transform.
Rates are reported as positive magnitudes (atoms or atoms/m^3 lost per
second).  Fourier convention: A(k) = int A(r) exp(-i k.r) d^3r, no 2 pi
factors.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.special import spherical_jn, sph_harm_y

from .constants import hbar
from .variational import G, TF_G, solve_lambda

#: Angular-average constant quoted alongside the rate formula (units u^2/q^4).
QUOTED_FT_CONSTANT = 0.1418
#: Closed form of the same average in the exp(-i k.r), no-2pi convention.
EXACT_FT_CONSTANT = 16.0 * math.pi**2 / 15.0
FT_CONVENTION = "A(k) = int A(r) exp(-i k.r) d^3r"

FORMULA = "formula"
INTEGRATED = "integrated"


class QuadratureError(RuntimeError):
    """A quadrature failed to reach its tolerance."""


@dataclass(frozen=True)
class LossInputs:
    """Microscopic inputs of the golden-rule rate (SI units)."""

    u: float            # J m
    q: float            # 1/m
    Omega: float        # rad/s
    m: float            # kg

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError("q must be positive")
        if self.u < 0:
            raise ValueError("u must be non-negative")
        if self.Omega < 0:
            raise ValueError("Omega must be non-negative")
        if not self.m > 0:
            raise ValueError("m must be positive")

    @property
    def pair_momentum(self):
        """Wavenumber of the created pairs, sqrt(m Omega / hbar)."""
        return math.sqrt(self.m * self.Omega / hbar)


@dataclass(frozen=True)
class FourierEstimate:
    """Angular average <|A(k)|^2> in units of u^2 / q^4."""

    constant: float
    error: float
    method: str
    k: float
    convention: str = FT_CONVENTION


@dataclass(frozen=True)
class LossEstimate:
    rate: float                 # atoms/s, magnitude
    region: str
    mode: str
    omega0: float
    inputs: dict = field(default_factory=dict)

    @property
    def rate_per_omega0(self):
        return self.rate / self.omega0

    def report(self):
        lines = [f"mode={self.mode}", f"region={self.region}",
                 f"rate={self.rate:.15e}", f"rate_per_omega0={self.rate_per_omega0:.15e}"]
        lines += [f"{k}={v:.15e}" if isinstance(v, float) else f"{k}={v}"
                  for k, v in self.inputs.items()]
        return "\n".join(lines) + "\n"


def interference_angular(n):
    """Angular factor of A: A(r) = (u / q^2) r^-3 * f(n), f = -3 n_x n_y."""
    n = np.asarray(n, dtype=float)
    return -3.0 * n[..., 0] * n[..., 1]


def _sphere_rule(n_theta, n_phi):
    """Product rule on the unit sphere, exact for low-degree polynomials."""
    mu, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    theta = np.arccos(mu)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.repeat(w[:, None] * (2.0 * math.pi / n_phi), n_phi, axis=1)
    n = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
    return T.ravel(), P.ravel(), n.reshape(-1, 3), W.ravel()


# -- scheme 1: direct double integral -------------------------------------------

def _direct_transform(khats, k, r_cut, n_mu, n_gl=16):
    """A(k khat) by direct quadrature over (r, cos theta') with theta' from k.

    The azimuth around k is integrated exactly by a short trapezoid rule
    (f is a quadratic form in n); cos theta' uses Gauss-Legendre and r
    composite Gauss panels of width pi/k up to r_cut.
    """
    mu, wmu = np.polynomial.legendre.leggauss(n_mu)
    n_az = 8
    az = 2.0 * math.pi * np.arange(n_az) / n_az
    st = np.sqrt(1.0 - mu**2)
    g = np.empty((len(khats), n_mu))
    for j, kh in enumerate(khats):
        ref = np.eye(3)[int(np.argmin(np.abs(kh)))]
        e1 = ref - (ref @ kh) * kh
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(kh, e1)
        n = (st[:, None, None] * (np.cos(az)[None, :, None] * e1 + np.sin(az)[None, :, None] * e2)
             + mu[:, None, None] * kh)
        g[j] = 2.0 * math.pi * interference_angular(n).mean(axis=1)
    x, w = np.polynomial.legendre.leggauss(n_gl)
    panel = math.pi / k
    starts = panel * np.arange(int(round(r_cut / panel)))
    r = (starts[:, None] + 0.5 * panel * (x + 1.0)[None, :]).ravel()
    wr = np.tile(0.5 * panel * w, len(starts))
    phase = np.exp(-1j * k * np.outer(r, mu)) * wmu[None, :]
    # int d^3r r^-3 f e^{-ik.r} = int dr / r int dOmega' f e^{-i k r mu}
    radial = (wr / r)[:, None] * phase
    return radial.sum(axis=0) @ g.T


def _average(values, weights):
    return float(np.dot(np.abs(values) ** 2, weights) / (4.0 * math.pi))


def _direct_constant(k, rho_max, n_dirs):
    # Gauss-Legendre resolves exp(-i rho mu) once n_mu exceeds ~rho/2
    n_mu = int(0.75 * rho_max) + 64
    _, _, khats, wk = _sphere_rule(*n_dirs)
    return _average(_direct_transform(khats, k, rho_max / k, n_mu), wk)


# -- scheme 2: harmonic projection on an angular grid -----------------------------

def _radial_bessel(l, k, x_cut):
    """int_0^inf j_l(k r) / r dr, split at k r = x_cut with an asymptotic tail."""
    head, _ = integrate.quad(lambda r: spherical_jn(l, k * r) / r, 0.0, x_cut / k,
                             limit=int(4 * x_cut), epsabs=1e-13, epsrel=1e-12)
    # j_l(x) ~ [sin(x - l pi/2) - l(l+1)/2 cos(x - l pi/2) / x] / x
    s, c = math.cos(l * math.pi / 2), -math.sin(l * math.pi / 2)
    b = 0.5 * l * (l + 1)

    def tail(weight, amp, power):
        if amp == 0.0:
            return 0.0
        val, _ = integrate.quad(lambda x: amp / x**power, x_cut, np.inf,
                                weight=weight, wvar=1.0)
        return val

    # sin(x - l pi/2) = s sin x + c cos x ; cos(x - l pi/2) = s cos x - c sin x
    rest = (tail("sin", s, 2) + tail("cos", c, 2)
            - b * (tail("cos", s, 3) - tail("sin", c, 3)))
    return head + rest


def _harmonic_constant(k, x_cut, l_max, n_grid, n_dirs):
    T, P, n, w = _sphere_rule(*n_grid)
    f = interference_angular(n)
    theta_k, phi_k, _, wk = _sphere_rule(*n_dirs)
    amp = np.zeros(len(wk), dtype=complex)
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            a_lm = np.sum(w * f * np.conj(sph_harm_y(l, m, T, P)))
            if abs(a_lm) < 1e-13:
                continue
            if l == 0:
                raise QuadratureError("monopole component makes the transform diverge")
            radial = _radial_bessel(l, k, x_cut)
            amp += (4.0 * math.pi * (-1j) ** l * a_lm * radial
                    * sph_harm_y(l, m, theta_k, phi_k))
    return _average(amp, wk)


METHODS = ("direct", "harmonic")


def interference_ft_constant(k=1.0, method="direct", rtol=1e-4):
    """Dimensionless <|A(k)|^2> q^4 / u^2 from one quadrature scheme.

    ``direct`` integrates the transform as a double integral over r and
    the polar angle about k; ``harmonic`` projects the angular factor on
    spherical harmonics over an angular grid and does the radial Bessel
    integrals by oscillatory quadrature.  Each scheme runs at two
    resolutions and the difference is the error estimate; above ``rtol``
    a :class:`QuadratureError` is raised.
    """
    if not k > 0:
        raise ValueError("k must be positive")
    if method == "direct":
        coarse = _direct_constant(k, 200.0 * math.pi, (6, 12))
        fine = _direct_constant(k, 400.0 * math.pi, (8, 16))
    elif method == "harmonic":
        coarse = _harmonic_constant(k, 100.0 * math.pi, 4, (12, 24), (6, 12))
        fine = _harmonic_constant(k, 200.0 * math.pi, 6, (16, 32), (8, 16))
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    error = abs(fine - coarse)
    if error > rtol * abs(fine):
        raise QuadratureError(
            f"{method} quadrature not converged: {fine:.10g} vs {coarse:.10g} "
            f"(residual {error:.3g})")
    return FourierEstimate(fine, error, method, float(k))


def ft_interference_oracle(u, q, k, method="direct"):
    """Angular average of |A(k)|^2 in SI units (J^2 m^6 when u is in J m)."""
    if not q > 0:
        raise ValueError("q must be positive")
    return interference_ft_constant(k, method).constant * u**2 / q**4


def pair_production_rate(density, u, q, Omega, m, constant=QUOTED_FT_CONSTANT):
    """Local pair-production loss rate (atoms m^-3 s^-1, magnitude).

    ``constant`` is <|A(k)|^2> q^4 / u^2; it defaults to the quoted value.
    """
    inputs = LossInputs(u, q, Omega, m)
    rho = np.asarray(density, dtype=float)
    if np.any(rho < 0):
        raise ValueError("density must be non-negative")
    a2 = constant * inputs.u**2 / inputs.q**4
    rate = (a2 / (6.0 * math.pi) * rho**2 * (m / hbar**2) ** 1.5
            * math.sqrt(inputs.Omega / hbar))
    return float(rate) if rate.ndim == 0 else rate


def _profile_l2(region, u_tilde, s_tilde):
    """int rho^2 d^3x for the unit-normalized profile, x in units of l0."""
    if region == G:
        sol = solve_lambda(u_tilde, s_tilde, trap=True)
        if not sol.exists:
            raise ValueError(f"no Gaussian minimum at u_tilde={u_tilde}, s_tilde={s_tilde}")
        lam = sol.lam

        def rho(x):
            return math.exp(-(x / lam) ** 2) / (math.pi * lam * lam) ** 1.5
        upper = 12.0 * lam
    else:
        R0 = math.pi * math.sqrt(s_tilde / (3.0 * u_tilde))

        def rho(x):
            return math.sin(math.pi * x / R0) / (4.0 * R0 * R0 * x) if x > 0 else \
                math.pi / (4.0 * R0**3)
        upper = R0
    val, _ = integrate.quad(lambda x: 4.0 * math.pi * x * x * rho(x) ** 2, 0.0, upper,
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def condensate_depletion(region, u_tilde, s_tilde, Omega, omega0, q_l0, mode=FORMULA,
                         constant=QUOTED_FT_CONSTANT):
    """Total depletion rate dN0/dt (atoms/s) in the G or TF-G region.

    ``formula`` returns the order-of-magnitude estimates
    u~^5 sqrt(Omega omega0) / (q l0)^4 (G) and
    u~^(7/2) s~^(-3/2) sqrt(Omega omega0) / (q l0)^4 (TF-G).
    ``integrated`` applies the local rate over the region's profile
    (variational Gaussian for G, the sine profile for TF-G), which reduces to
    (3 c / 4) u~^2 int rho^2 d^3x sqrt(Omega omega0) / (q l0)^4.
    """
    if region not in (G, TF_G):
        raise ValueError(f"region must be {G!r} or {TF_G!r}, got {region!r}")
    if region == TF_G and not s_tilde > 0:
        raise ValueError("the TF-G estimate needs s_tilde > 0")
    if u_tilde < 0:
        raise ValueError("u_tilde must be non-negative")
    if Omega < 0 or not omega0 > 0 or not q_l0 > 0:
        raise ValueError("need Omega >= 0, omega0 > 0 and q_l0 > 0")
    scale = math.sqrt(Omega * omega0) / q_l0**4
    inputs = {"u_tilde": float(u_tilde), "s_tilde": float(s_tilde), "Omega": float(Omega),
              "omega0": float(omega0), "q_l0": float(q_l0)}
    if mode == FORMULA:
        if region == G:
            rate = u_tilde**5 * scale
        else:
            rate = u_tilde**3.5 * s_tilde**-1.5 * scale
    elif mode == INTEGRATED:
        inputs["ft_constant"] = float(constant)
        if u_tilde == 0:
            rate = 0.0
        else:
            rate = 0.75 * constant * u_tilde**2 * _profile_l2(region, u_tilde, s_tilde) * scale
    else:
        raise ValueError(f"mode must be {FORMULA!r} or {INTEGRATED!r}")
    return LossEstimate(float(rate), region, mode, float(omega0), inputs)
