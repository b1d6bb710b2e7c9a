"""Gaussian-ansatz energy, stationary radii and the (u~, s~) phase diagram.

The radius ``lam`` is measured in oscillator lengths and energies per
particle in units of hbar*omega0.  With ``trap=False`` the harmonic term is
dropped; all formulas otherwise keep the same units so that results can be
rescaled to the trapless variables ``x = lam * u~`` and ``c = s~ * u~``.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

G = "G"
TF_G = "TF-G"
TF_O = "TF-O"
IDEAL = "I"
CROSSOVER = "crossover"
REGIONS = (G, TF_G, TF_O, IDEAL)

# Asymptotic labels need every defining ratio to clear this factor
REGION_MARGIN = 10.0

LAMBDA_MIN = 1e-8
LAMBDA_MAX = 1e8
_NODES_PER_DECADE = 100


class Breakdown(NamedTuple):
    T: float
    V_ext: float
    U_u: float
    U_s: float

    @property
    def total(self):
        return self.T + self.V_ext + self.U_u + self.U_s


class StationaryPoint(NamedTuple):
    lam: float
    kind: str          # "min", "max" or "inflection"
    energy: float


@dataclass
class VariationalSolution:
    u_tilde: float
    s_tilde: float
    trap: bool
    lam: float                       # nan when kind == "none"
    kind: str                        # global-min | local-min | none
    energy_per_particle: float
    breakdown: Breakdown = None
    stationary_points: list = field(default_factory=list)

    @property
    def exists(self):
        return self.kind != "none"

    @property
    def region(self):
        if self.s_tilde < 0:
            return None
        return classify_region(self.u_tilde, self.s_tilde)

    def quintic_residual(self):
        return stationarity_residual(self.lam, self.u_tilde, self.s_tilde, self.trap)

    def virial_residual(self):
        b = self.breakdown
        return (-b.T + b.V_ext - 0.5 * b.U_u - 1.5 * b.U_s) / b.T


def energy(lam, u_tilde, s_tilde, trap=True):
    """Variational energy per particle, in hbar*omega0."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("lambda must be positive")
    trap_term = lam**2 if trap else 0.0
    e = 0.75 * (lam**-2 + trap_term - 2.0 * u_tilde / lam
                + (2.0 / 3.0) * s_tilde * lam**-3)
    return e if e.ndim else float(e)


def breakdown(lam, u_tilde, s_tilde, trap=True):
    """Kinetic, trap, 1/r and contact energies per particle of the Gaussian."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return Breakdown(T=0.75 / lam**2,
                     V_ext=0.75 * lam**2 if trap else 0.0,
                     U_u=-1.5 * u_tilde / lam,
                     U_s=0.5 * s_tilde / lam**3)


def _poly(lam, u_tilde, s_tilde, trap):
    # lam^5 * (-lam^-4 + [1] + u lam^-3 - s lam^-5); same sign as dH/dlam
    return (lam**5 if trap else 0.0) + u_tilde * lam**2 - lam - s_tilde


def _dpoly(lam, u_tilde, trap):
    return (5.0 * lam**4 if trap else 0.0) + 2.0 * u_tilde * lam - 1.0


def stationarity_residual(lam, u_tilde, s_tilde, trap=True):
    """Residual of -lam^-4 + 1 + u lam^-3 - s lam^-5 = 0, relative to its largest term."""
    terms = [-lam**-4, 1.0 if trap else 0.0, u_tilde * lam**-3, -s_tilde * lam**-5]
    scale = max(abs(t) for t in terms)
    return abs(math.fsum(terms)) / scale


def _bisect(f, lo, hi, flo, rtol=1e-14):
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * hi or mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _turning_point(u_tilde, trap):
    """Positive zero of the polynomial's derivative (unique when u~ >= 0)."""
    if u_tilde < 0:
        return None
    if not trap:
        return 0.5 / u_tilde if u_tilde > 0 else None
    f = lambda x: _dpoly(x, u_tilde, True)
    hi = 1.0
    while f(hi) < 0:
        hi *= 2.0
    return _bisect(f, 0.0, hi, f(0.0))


def positive_roots(u_tilde, s_tilde, trap=True):
    """All roots of the stationarity polynomial in [LAMBDA_MIN, LAMBDA_MAX].

    Sign changes are bracketed on a logarithmic grid that also contains
    the polynomial's turning point, so nearly degenerate root pairs are
    still separated; each bracket is refined by bisection.
    """
    nodes = np.logspace(math.log10(LAMBDA_MIN), math.log10(LAMBDA_MAX),
                        _NODES_PER_DECADE * 16 + 1)
    tp = _turning_point(u_tilde, trap)
    if tp is not None and LAMBDA_MIN < tp < LAMBDA_MAX:
        nodes = np.sort(np.append(nodes, tp))
    f = lambda x: _poly(x, u_tilde, s_tilde, trap)
    vals = [f(x) for x in nodes]
    roots = []
    for i in range(len(nodes) - 1):
        a, b = nodes[i], nodes[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
        elif (fa < 0) != (fb < 0) and fb != 0.0:
            roots.append(_bisect(f, float(a), float(b), fa))
    if vals[-1] == 0.0:
        roots.append(float(nodes[-1]))
    return roots


def solve_lambda(u_tilde, s_tilde, trap=True):
    """Stationary radii of the Gaussian energy and the preferred minimum."""
    points = []
    for lam in positive_roots(u_tilde, s_tilde, trap):
        d = _dpoly(lam, u_tilde, trap)
        kind = "min" if d > 0 else ("max" if d < 0 else "inflection")
        points.append(StationaryPoint(lam, kind, energy(lam, u_tilde, s_tilde, trap)))
    minima = [p for p in points if p.kind == "min"]
    if not minima:
        return VariationalSolution(u_tilde, s_tilde, trap, math.nan, "none",
                                   math.nan, None, points)
    best = min(minima, key=lambda p: p.energy)
    # Energy is unbounded below at small radius when s~ < 0; trapless energies tend to 0
    bounded = s_tilde >= 0 and (trap or best.energy <= 0.0)
    kind = "global-min" if bounded else "local-min"
    return VariationalSolution(u_tilde, s_tilde, trap, best.lam, kind, best.energy,
                               breakdown(best.lam, u_tilde, s_tilde, trap), points)


def classify_region(u_tilde, s_tilde):
    """Asymptotic region of the phase diagram, or ``crossover``."""
    if s_tilde < 0:
        raise ValueError("region taxonomy undefined for attractive scattering (s~ < 0)")
    k = REGION_MARGIN
    u53 = u_tilde ** (5.0 / 3.0)
    if u_tilde >= k and s_tilde * u_tilde <= 1.0 / k:
        return G
    if s_tilde * u_tilde >= k and s_tilde <= u53 / k:
        return TF_G
    if s_tilde >= k and s_tilde >= k * u53:
        return TF_O
    if u_tilde <= 1.0 / k and s_tilde <= 1.0 / k:
        return IDEAL
    return CROSSOVER


@dataclass(frozen=True)
class Asymptotics:
    region: str
    lam: float
    release_energy: float            # per N, in hbar*omega0 (multiply by N for total)
    peak_density: float              # 1/m^3, nan if scales not supplied
    consistent: bool                 # region agrees with classify_region


def asymptotics(region, u_tilde, s_tilde, N=None, l0=None, a=None, a_star=None):
    """Closed-form radius, release energy and peak density in a region.

    ``release_energy`` is per particle; the total is ``N`` times it.  The
    contact-dominated trapped radius uses lam = s~^(1/5), which balances the
    trap against the contact term.  The gravity-contact peak density is the
    center of the exact profile, 2 pi N / (a a*)^(3/2).
    """
    if region not in REGIONS:
        raise ValueError(f"no asymptotic form for region {region!r}")
    consistent = s_tilde >= 0 and classify_region(u_tilde, s_tilde) == region
    if not consistent:
        warnings.warn(f"parameters (u~={u_tilde:g}, s~={s_tilde:g}) are not in region {region}",
                      stacklevel=2)

    def have(*xs):
        return all(x is not None for x in xs)

    rho = math.nan
    if region == G:
        lam = 1.0 / u_tilde
        e_rel = 0.75 * u_tilde**2
        if have(N, a_star):
            rho = math.sqrt(32.0) ** 3 * math.pi**3 * N**4 / (27.0 * a_star**3)
    elif region == TF_G:
        lam = math.sqrt(s_tilde / u_tilde)
        e_rel = 0.5 * u_tilde**1.5 / math.sqrt(s_tilde)
        if have(N, a, a_star):
            rho = 2.0 * math.pi * N / (a * a_star) ** 1.5
    elif region == TF_O:
        lam = s_tilde**0.2
        e_rel = 0.5 * s_tilde**0.4
        if have(N, a, l0):
            rho = 15.0**0.4 * N**0.4 / (8.0 * math.pi * a**0.6 * l0**2.4)
    else:
        lam = 1.0
        e_rel = 0.75
        if have(N, l0):
            rho = N / (math.pi**1.5 * l0**3)
    return Asymptotics(region, lam, e_rel, rho, consistent)


def gaussian_peak_density(lam, N, l0):
    """Central density N / (pi^(3/2) (lam l0)^3) of the Gaussian ansatz."""
    return N / (math.pi**1.5 * (lam * l0) ** 3)


# Trapless collapse: x^2 - x - c = 0 has a minimum iff 1 + 4c > 0
TRAPLESS_CRITICAL_PRODUCT = -0.25
# Trapped, no 1/r: double root of lam^5 - lam - s = 0
IDEAL_CRITICAL_LAMBDA = 5.0**-0.25
IDEAL_CRITICAL_S = -4.0 * 5.0**-1.25


def critical_number(a, a_star, l0):
    """Critical atom numbers for a < 0: (without 1/r attraction, trapless with it).

    Without the 1/r term the trapped Gaussian loses its minimum at
    |s~| = 4 * 5^(-5/4); with it and no trap the condition is s~ u~ = -1/4,
    i.e. (8 pi / 3) N^2 |a| / a* = 1/4.
    """
    if a >= 0:
        raise ValueError("critical numbers are defined for negative scattering length")
    n_no_gravity = abs(IDEAL_CRITICAL_S) * math.sqrt(math.pi / 2.0) * l0 / abs(a)
    n_gravity = math.sqrt(3.0 / (32.0 * math.pi)) * math.sqrt(a_star / abs(a))
    return n_no_gravity, n_gravity


def trapless_collapse_boundary(tol=1e-9):
    """Locate by bisection the product c = s~ u~ where the trapless minimum vanishes."""
    exists = lambda c: solve_lambda(1.0, c, trap=False).exists
    lo, hi = -1.0, 0.0           # no minimum at lo, minimum at hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exists(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def phase_diagram(log_u_range, log_s_range, n_u, n_s, trap=True):
    """Radius and region on a log10 grid; rows ordered with s~ varying fastest."""
    if n_u < 2 or n_s < 2:
        raise ValueError("grid counts must be >= 2 per axis")
    rows = []
    for lu in np.linspace(log_u_range[0], log_u_range[1], n_u):
        for ls in np.linspace(log_s_range[0], log_s_range[1], n_s):
            ut, st = 10.0**lu, 10.0**ls
            sol = solve_lambda(ut, st, trap)
            rows.append((ut, st, sol.lam, classify_region(ut, st)))
    return rows


def trapless_scaled_energy(x, c):
    """Trapless energy in units u~^2 hbar omega0 at radius x = lam u~, c = s~ u~."""
    x = np.asarray(x, dtype=float)
    return 0.75 * (x**-2 - 2.0 / x + (2.0 / 3.0) * c * x**-3)


def energy_curves(u_tilde, ratios, x):
    """Trapless curves {c: (x, f)} for each product c = s~ u~."""
    if not u_tilde > 0:
        raise ValueError("u_tilde must be positive")
    x = np.asarray(x, dtype=float)
    return {c: (x, trapless_scaled_energy(x, c)) for c in ratios}
