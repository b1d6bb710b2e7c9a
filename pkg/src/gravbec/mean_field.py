"""Spherically symmetric ground states of the nonlocal mean-field equation.

Dimensionless energy functional per particle (trap units: length l0,
energy hbar*omega0; density normalized to one)::

    E = 1/2 int |grad psi|^2 + [1/2 int r^2 |psi|^2] + g_s/2 int |psi|^4
        - g_u/2 int int |psi(r)|^2 |psi(r')|^2 / |r - r'|

with g_s = 4 pi N a / l0 and g_u = 4 pi^2 N l0 / a*.  Without a trap the
problem is solved in gravitational units (length l0 / g_u, energy
g_u^2 hbar*omega0), where the 1/r coupling is one and the contact
coupling becomes g_s * g_u.

States carry the physical normalization ``int |psi|^2 d^3r = N``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .physical_model import tilde_from_couplings
from .variational import solve_lambda

TRAP_UNITS = "trap"
GRAVITATIONAL_UNITS = "gravitational"

FOUR_PI = 4.0 * math.pi


class CollapseError(RuntimeError):
    """The condensate collapses: density piles into the innermost cells."""


class ConvergenceError(RuntimeError):
    """The gradient flow did not converge within the iteration budget."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_i = i * dr, i = 1..n, with a hard wall at r_max."""

    r_max: float
    n: int = 4096

    def __post_init__(self):
        if self.n < 16:
            raise ValueError("a radial grid needs at least 16 points")
        if not self.r_max > 0:
            raise ValueError("r_max must be positive")

    @property
    def dr(self):
        return self.r_max / (self.n + 1)

    @property
    def r(self):
        return self.dr * np.arange(1, self.n + 1)

    def integrate(self, f):
        """int f(r) 4 pi r^2 dr for samples of a radial function."""
        r = self.r
        return FOUR_PI * self.dr * float(np.dot(f, r * r))


@dataclass
class RadialState:
    grid: RadialGrid
    psi: np.ndarray
    norm: float = 1.0
    units: str = TRAP_UNITS

    @property
    def density(self):
        return self.psi**2

    def normalization(self):
        return self.grid.integrate(self.density)

    def reduced(self):
        """u = r psi / sqrt(N), normalized to one."""
        return self.psi * self.grid.r / math.sqrt(self.norm)

    def mean_square_radius(self):
        r = self.grid.r
        return self.grid.integrate(self.density * r * r) / self.norm

    def central_density(self):
        """Density extrapolated to r = 0 from the first three points."""
        rho = self.density
        return float(3.0 * rho[0] - 3.0 * rho[1] + rho[2])

    @classmethod
    def from_reduced(cls, grid, u, norm=1.0, units=TRAP_UNITS):
        return cls(grid, u / grid.r * math.sqrt(norm), norm, units)


@dataclass(frozen=True)
class EnergyBreakdown:
    """Per-particle energies in the unit system of the state."""

    T: float
    V_ext: float
    U_u: float
    U_s: float
    chemical_potential: float

    @property
    def total(self):
        return self.T + self.V_ext + self.U_u + self.U_s


def _check_normalized(state, rtol=1e-8):
    err = abs(state.normalization() / state.norm - 1.0)
    if err > rtol:
        raise ValueError(f"state is not normalized (relative error {err:.3g})")


def hartree_potential(state, g_u):
    """1/r part of the Hartree potential, -g_u [M(R)/R + int_R^inf 4 pi R' rho dR'].

    ``g_u`` already contains the atom number, so the enclosed mass M is taken
    from the density normalized to one and the far field is -g_u / R.
    """
    g = state.grid
    return _kernels.gravity_potential(np.ascontiguousarray(state.reduced()), g.r, g.dr,
                                      float(g_u))


def contact_potential(state, g_s):
    return g_s * state.density / state.norm


def _breakdown(u, grid, g_s, g_u, trap):
    T, V, Uu, Us = _kernels.energy_terms(u, grid.r, grid.dr, g_s, g_u, trap)
    return EnergyBreakdown(T, V, Uu, Us, T + V + 2.0 * Us + 2.0 * Uu)


def total_energy(state, g_s, g_u, trap=True):
    """Per-particle energy breakdown and chemical potential of a state."""
    _check_normalized(state)
    u = np.ascontiguousarray(state.reduced())
    return _breakdown(u, state.grid, float(g_s), float(g_u), bool(trap))


def virial_residual(breakdown):
    """(-T + V_ext - U_u/2 - 3 U_s/2) / T."""
    b = breakdown
    if b.T == 0:
        raise ValueError("virial residual undefined for zero kinetic energy")
    return (-b.T + b.V_ext - 0.5 * b.U_u - 1.5 * b.U_s) / b.T


def release_energy(breakdown, N):
    """Total release energy N (T + U_s)."""
    return N * (breakdown.T + breakdown.U_s)


def _residual(u, grid, g_s, g_u, trap, mu):
    hu = (_kernels.kinetic_apply(u, grid.dr)
          + _kernels.effective_potential(u, grid.r, grid.dr, g_s, g_u, trap) * u)
    res = hu - mu * u
    return math.sqrt(FOUR_PI * grid.dr * float(np.dot(res, res)))


def gaussian_state(grid, width, norm=1.0, units=TRAP_UNITS):
    """psi proportional to exp(-r^2 / (2 width^2)), normalized on the grid."""
    r = grid.r
    u = r * np.exp(-0.5 * (r / width) ** 2)
    u /= math.sqrt(FOUR_PI * grid.dr * float(np.dot(u, u)))
    return RadialState.from_reduced(grid, u, norm, units)


@dataclass
class GroundState:
    state: RadialState
    energy: EnergyBreakdown
    iterations: int
    residual: float
    g_s: float                      # couplings in the state's unit system
    g_u: float
    trap: bool
    history: list = field(default_factory=list, repr=False)

    def __iter__(self):
        return iter((self.state, self.energy))

    @property
    def virial(self):
        return virial_residual(self.energy)


def variational_width(g_s, g_u, trap=True):
    """Gaussian width from the variational minimum, or None if there is none."""
    pair = tilde_from_couplings(g_u, g_s)
    sol = solve_lambda(pair.u_tilde, pair.s_tilde, trap)
    return sol.lam if sol.exists else None


def ground_state(g_s, g_u, trap=True, grid=None, tol=1e-10, res_tol=1e-8,
                 max_iter=200_000, N=1.0, init="variational", dt=None, n=4096):
    """Ground state by normalized semi-implicit imaginary-time descent.

    Without a trap, ``g_u`` must be positive and the result is returned in
    gravitational units (see module docstring).  ``init`` is
    ``"variational"`` (Gaussian of the variational width), ``"gaussian"``
    (unit width) or a :class:`RadialState` on the target grid.  Without an
    explicit grid, ``n`` points span eight variational widths.

    Raises :class:`CollapseError` when the central density grows beyond 1e6
    times its initial value while the energy keeps dropping or when the
    converged state is narrower than ten grid cells, and
    :class:`ConvergenceError` when the budget is exhausted.
    """
    g_s, g_u = float(g_s), float(g_u)
    units = TRAP_UNITS
    if not trap:
        if not g_u > 0:
            raise ValueError("a trapless condensate needs g_u > 0 to be bound")
        g_s, g_u = g_s * g_u, 1.0
        units = GRAVITATIONAL_UNITS

    width = variational_width(g_s, g_u, trap)
    if grid is None:
        grid = RadialGrid(8.0 * (width or 1.0), n)
    r, dr = grid.r, grid.dr

    if isinstance(init, RadialState):
        if init.grid != grid:
            raise ValueError("initial state must live on the solver grid")
        u = np.ascontiguousarray(init.reduced(), dtype=float)
        u = u / math.sqrt(FOUR_PI * dr * float(np.dot(u, u)))
    elif init in ("variational", "gaussian"):
        w = width if (init == "variational" and width) else 1.0
        u = gaussian_state(grid, w).reduced()
    else:
        raise ValueError(f"unknown init {init!r}")
    u = np.ascontiguousarray(u)

    b = _breakdown(u, grid, g_s, g_u, trap)
    energy = b.total
    rho0 = u[0] ** 2 / r[0] ** 2
    length = width or 1.0
    step = dt if dt is not None else 0.1 * length**2
    step_max = 1e4 * length**2
    step_min = 1e-12 * length**2
    history = [energy]
    residual = math.inf

    for it in range(1, max_iter + 1):
        trial = _kernels.flow_step(u, r, dr, g_s, g_u, trap, step)
        tb = _breakdown(trial, grid, g_s, g_u, trap)
        scale = max(abs(energy), b.T)
        change = energy - tb.total
        # Increases beyond summation roundoff mean the step overshot
        if change < -1e-12 * (b.T + b.V_ext + abs(b.U_u) + abs(b.U_s)):
            step *= 0.5
            if step < step_min:
                raise ConvergenceError(
                    f"step size underflow after {it} iterations "
                    f"(energy {energy:.12g}, residual {residual:.3g})")
            continue
        u, b, energy = trial, tb, tb.total
        history.append(energy)
        # Beyond ~1/|mu| the explicit mean field drives a limit cycle
        cap = min(step_max, 1.0 / max(abs(b.chemical_potential), b.T))
        step = min(step * 1.25, cap)

        if u[0] ** 2 / r[0] ** 2 > 1e6 * rho0 and change > 0:
            raise CollapseError(
                f"central density grew {u[0]**2 / r[0]**2 / rho0:.3g}x while the energy "
                f"kept falling (energy {energy:.6g} after {it} iterations)")

        if abs(change) <= tol * scale:
            residual = _residual(u, grid, g_s, g_u, trap, b.chemical_potential)
            if residual <= res_tol * max(abs(b.chemical_potential), b.T):
                state = RadialState.from_reduced(grid, u, N, units)
                # a minimum a few cells wide exists only because of the lattice
                rms = math.sqrt(state.mean_square_radius())
                if rms < 10.0 * dr:
                    raise CollapseError(
                        f"state shrank to the grid scale (rms radius {rms / dr:.3g} cells, "
                        f"energy {energy:.6g})")
                return GroundState(state, b, it, residual, g_s, g_u, trap, history)

    raise ConvergenceError(
        f"no convergence in {max_iter} iterations (energy {energy:.12g}, "
        f"last residual {residual:.3g})")


def tfg_profile(N, a, a_star, grid):
    """Thomas-Fermi profile of contact repulsion against 1/r attraction.

    psi = sqrt(N) / (2 R0) sqrt(sin(pi R / R0) / R) inside R0 = sqrt(a a*) / 2
    and zero outside.  Lengths are in the grid's units.
    """
    if a <= 0:
        raise ValueError("the gravity-contact Thomas-Fermi profile needs a > 0")
    if a_star <= 0:
        raise ValueError("a_star must be positive")
    return tfg_state(0.5 * math.sqrt(a * a_star), grid, N)


def tfg_state(R0, grid, N=1.0):
    """The gravity-contact Thomas-Fermi profile of radius ``R0`` on ``grid``."""
    if not R0 > 0:
        raise ValueError("R0 must be positive")
    r = grid.r
    inside = r < R0
    psi = np.zeros_like(r)
    psi[inside] = (math.sqrt(N) / (2.0 * R0)
                   * np.sqrt(np.sin(math.pi * r[inside] / R0) / r[inside]))
    return RadialState(grid, psi, N, "length")


def tfg_radius(a, a_star):
    return 0.5 * math.sqrt(a * a_star)


def tfg_grid(R0, n=4096):
    """Grid for a deep gravity-contact state of radius ``R0`` (gravitational units).

    Outside R0 the density decays over ~sqrt(R0 / 2) since mu ~ -1 / R0, so
    the wall sits 25 such lengths beyond the edge.
    """
    return RadialGrid(R0 + 25.0 * math.sqrt(0.5 * R0), n)


def density_l2_error(state, reference):
    """Relative L2 distance of two densities with the 4 pi r^2 dr measure."""
    if state.grid != reference.grid:
        raise ValueError("states must share a grid")
    diff = state.density / state.norm - reference.density / reference.norm
    ref = reference.density / reference.norm
    g = state.grid
    return math.sqrt(g.integrate(diff**2) / g.integrate(ref**2))
