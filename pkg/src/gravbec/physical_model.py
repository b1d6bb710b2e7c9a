"""Atom/trap parameters, derived length scales and regime checks.

All quantities in :class:`PhysicalParams` are SI.  The solver modules work
with dimensionless numbers only; this module owns every conversion between
the two.

Trap units: length ``l0 = sqrt(hbar / (m omega0))``, energy ``hbar omega0``.
Gravitational units (trapless): length ``hbar^2 / (m u N)``, energy
``m u^2 N^2 / hbar^2``.
"""

import math
from dataclasses import dataclass

from . import constants as const

# Interpretation of "much less than" / "much greater than"
MUCH_LESS = 0.1
MUCH_GREATER = 10.0


@dataclass(frozen=True)
class PhysicalParams:
    """Atom, trap and coupling constants (SI).

    ``a`` may be negative.  ``omega0 = 0`` means no trap and ``u = 0`` means
    no gravity-like coupling; the corresponding derived scales are then
    infinite.
    """

    m: float
    a: float
    u: float
    omega0: float
    N: float
    q: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.u < 0:
            raise ValueError(f"coupling u must be >= 0, got {self.u}")
        if self.omega0 < 0:
            raise ValueError(f"omega0 must be >= 0, got {self.omega0}")
        if not self.N >= 1:
            raise ValueError(f"atom number must be >= 1, got {self.N}")
        if not self.q > 0:
            raise ValueError(f"wavenumber q must be positive, got {self.q}")

    @property
    def l0(self):
        """Oscillator length (m); ``inf`` without a trap."""
        if self.omega0 == 0:
            return math.inf
        return math.sqrt(const.hbar / (self.m * self.omega0))

    @property
    def a_star(self):
        """Gravitational Bohr radius (m); ``inf`` when ``u = 0``."""
        if self.u == 0:
            return math.inf
        return gravitational_bohr_radius(self)

    @property
    def gravitational_length(self):
        """Length unit hbar^2 / (m u N) of the trapless problem."""
        if self.u == 0:
            return math.inf
        return const.hbar**2 / (self.m * self.u * self.N)

    @property
    def gravitational_energy(self):
        """Energy unit m u^2 N^2 / hbar^2 of the trapless problem."""
        return self.m * self.u**2 * self.N**2 / const.hbar**2


@dataclass(frozen=True)
class DimensionlessPair:
    u_tilde: float
    s_tilde: float


@dataclass(frozen=True)
class Check:
    """A raw ratio together with its threshold and outcome."""

    value: float
    threshold: float
    passed: bool


@dataclass(frozen=True)
class RegimeReport:
    diluteness: Check           # rho_max a^3 << 1
    mfa_gravity: Check          # rho_max a*^3 >> 1
    near_zone: Check            # q L << 1
    hierarchy_upper: Check      # a* / lambda_DB >> 1
    hierarchy_lower: Check      # lambda_DB / |a| >> 1
    max_misalignment: float     # rad, tolerable angular error
    max_intensity_noise: float  # tolerable Delta I / I

    @property
    def hierarchy_ok(self):
        return self.hierarchy_upper.passed and self.hierarchy_lower.passed

    @property
    def all_ok(self):
        return (self.diluteness.passed and self.mfa_gravity.passed
                and self.near_zone.passed and self.hierarchy_ok)


def gravitational_bohr_radius(params):
    """a* = h^2 / (m u) = 4 pi^2 hbar^2 / (m u)."""
    if params.u <= 0:
        raise ValueError("no gravity-like coupling: a* is undefined for u = 0")
    return 4.0 * math.pi**2 * const.hbar**2 / (params.m * params.u)


def dimensionless(params):
    """Return the dimensionless gravity and scattering strengths.

    Raises ValueError without a trap, where ``l0`` does not exist; use
    :func:`trapless_couplings` and gravitational units instead.
    """
    if params.omega0 <= 0:
        raise ValueError("trapless: dimensionless pair undefined, "
                         "use gravitational units")
    l0 = params.l0
    if params.u == 0:
        u_tilde = 0.0
    else:
        u_tilde = (math.pi * math.sqrt(32.0 * math.pi / 9.0)
                   * params.N * l0 / params.a_star)
    s_tilde = math.sqrt(2.0 / math.pi) * params.N * params.a / l0
    return DimensionlessPair(u_tilde, s_tilde)


def couplings_from_tilde(u_tilde, s_tilde):
    """Map (u~, s~) to the mean-field couplings (g_u, g_s) in trap units.

    ``g_s = 4 pi N a / l0`` and ``g_u = 4 pi^2 N l0 / a*``; the Gaussian
    ansatz turns them into ``s~ = g_s / (2 pi)^(3/2)`` and
    ``u~ = sqrt(2) g_u / (3 sqrt(pi))``.
    """
    g_s = s_tilde * (2.0 * math.pi) ** 1.5
    g_u = u_tilde * 3.0 * math.sqrt(math.pi) / math.sqrt(2.0)
    return g_u, g_s


def tilde_from_couplings(g_u, g_s):
    """Inverse of :func:`couplings_from_tilde`."""
    return DimensionlessPair(math.sqrt(2.0) * g_u / (3.0 * math.sqrt(math.pi)),
                             g_s / (2.0 * math.pi) ** 1.5)


def trap_couplings(params):
    """(g_u, g_s) for the trapped mean-field problem in trap units."""
    l0 = params.l0
    if not math.isfinite(l0):
        raise ValueError("trap couplings need omega0 > 0")
    g_s = 4.0 * math.pi * params.N * params.a / l0
    g_u = 0.0 if params.u == 0 else 4.0 * math.pi**2 * params.N * l0 / params.a_star
    return g_u, g_s


def trapless_contact_coupling(params):
    """Contact coupling in gravitational units, 16 pi^3 N^2 a / a*.

    In gravitational units the 1/r coupling is exactly one, so this is the
    only free number of the trapless problem.
    """
    return 16.0 * math.pi**3 * params.N**2 * params.a / gravitational_bohr_radius(params)


def validate_regime(params, rho_max, L, lambda_db=None):
    """Evaluate the validity inequalities of the dilute mean-field model.

    ``rho_max`` is the peak density (1/m^3) and ``L`` the condensate rms
    radius (m).  Without an explicit de Broglie wavelength, the zero-point
    estimate ``h / (hbar / L) = 2 pi L`` is used.
    """
    if rho_max < 0:
        raise ValueError("rho_max must be >= 0")
    if not L > 0:
        raise ValueError("L must be positive")
    if lambda_db is None:
        lambda_db = 2.0 * math.pi * L

    def less(x):
        return Check(x, MUCH_LESS, bool(x < MUCH_LESS))

    def greater(x):
        return Check(x, MUCH_GREATER, bool(x > MUCH_GREATER))

    a_abs = abs(params.a)
    a_star = params.a_star
    qL = params.q * L
    return RegimeReport(
        diluteness=less(rho_max * a_abs**3),
        mfa_gravity=greater(rho_max * a_star**3),
        near_zone=less(qL),
        hierarchy_upper=greater(a_star / lambda_db),
        hierarchy_lower=greater(lambda_db / a_abs if a_abs > 0 else math.inf),
        max_misalignment=MUCH_LESS * qL,
        max_intensity_noise=MUCH_LESS * qL,
    )
