"""Laser-induced dipole-dipole pair potentials.

Beams are monochromatic circularly polarized plane waves.  The pair
potential of a beam set is the incoherent sum of the single-beam
potentials: cross terms between different beams oscillate at the beam
difference frequencies and are handled by :mod:`gravbec.losses`.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from . import constants as const

LEFT = "left"
RIGHT = "right"

_EYE = np.eye(3)


@dataclass(frozen=True)
class EulerAngles:
    """z-y-z Euler angles (radians)."""

    alpha: float
    beta: float
    gamma: float

    def matrix(self):
        """R = Rz(alpha) Ry(beta) Rz(gamma)."""
        return _rot_z(self.alpha) @ _rot_y(self.beta) @ _rot_z(self.gamma)


def _rot_z(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(t):
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


@dataclass(frozen=True)
class Beam:
    intensity: float                 # W / m^2
    direction: tuple                 # unit wavevector direction
    wavenumber: float                # 1 / m
    handedness: str = LEFT

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (3,):
            raise ValueError("direction must be a 3-vector")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError(f"direction must be a unit vector, |d| = {np.linalg.norm(d)!r}")
        if self.intensity < 0:
            raise ValueError("intensity must be >= 0")
        if not self.wavenumber > 0:
            raise ValueError("wavenumber must be positive")
        if self.handedness not in (LEFT, RIGHT):
            raise ValueError(f"handedness must be {LEFT!r} or {RIGHT!r}")
        object.__setattr__(self, "direction", tuple(float(x) for x in d))

    @classmethod
    def along(cls, direction, intensity, wavenumber, handedness=LEFT):
        """Build a beam, normalizing ``direction`` first."""
        d = np.asarray(direction, dtype=float)
        return cls(intensity, tuple(d / np.linalg.norm(d)), wavenumber, handedness)

    def polarization(self):
        """Complex unit polarization vector.

        The transverse frame (e1, e2, q) is right-handed with e1 taken from
        the coordinate axis least aligned with the beam, so the vector is
        reproducible; physical results do not depend on this choice.
        """
        qh = np.array(self.direction)
        axis = _EYE[int(np.argmin(np.abs(qh)))]
        e1 = axis - axis.dot(qh) * qh
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(qh, e1)
        sign = 1.0 if self.handedness == LEFT else -1.0
        return (e1 + sign * 1j * e2) / math.sqrt(2.0)


@dataclass(frozen=True)
class BeamSet:
    beams: tuple
    polarizability: float            # SI, C m^2 / V
    euler: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "beams", tuple(self.beams))
        if not self.beams:
            raise ValueError("a beam set needs at least one beam")
        k0 = self.beams[0].wavenumber
        if any(b.wavenumber != k0 for b in self.beams):
            raise ValueError("all beams in a set must share one wavenumber")

    @property
    def wavenumber(self):
        return self.beams[0].wavenumber

    @property
    def total_intensity(self):
        return sum(b.intensity for b in self.beams)

    def rotated(self, R):
        """The same set with every beam direction rotated by ``R``."""
        R = np.asarray(R, dtype=float)
        beams = [Beam.along(R @ np.array(b.direction), b.intensity, b.wavenumber,
                            b.handedness) for b in self.beams]
        return BeamSet(tuple(beams), self.polarizability)


def _split(r):
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != 3:
        raise ValueError("separation vectors must have a trailing dimension of 3")
    dist = np.linalg.norm(r, axis=-1)
    if np.any(dist == 0):
        raise ValueError("singular separation: |r| = 0")
    return r, dist, r / dist[..., None]


def retarded_tensor(q, r):
    """Retarded dipole-dipole tensor V_ij(q, r) in 1/m^3.

    ``r`` may carry leading batch dimensions; the result has shape
    ``r.shape[:-1] + (3, 3)``.
    """
    r, dist, rh = _split(r)
    x = q * dist
    outer = rh[..., :, None] * rh[..., None, :]
    static = (_EYE - 3.0 * outer) * (np.cos(x) + x * np.sin(x))[..., None, None]
    transverse = (_EYE - outer) * (x**2 * np.cos(x))[..., None, None]
    return (static - transverse) / dist[..., None, None] ** 3


def _coupling_constant(polarizability):
    return polarizability**2 / (4.0 * math.pi * const.c * const.epsilon_0**2)


def _contract(beam, M):
    """Re(e* . M . e) for the beam polarization; M has shape (..., 3, 3)."""
    e = beam.polarization()
    val = np.einsum("i,...ij,j->...", e.conj(), M, e)
    return val.real


def pair_potential(beams, r):
    """Induced pair potential (J) of a beam set at separation(s) ``r`` (m)."""
    r, dist, rh = _split(r)
    q = beams.wavenumber
    V = retarded_tensor(q, r)
    K = _coupling_constant(beams.polarizability)
    total = np.zeros(dist.shape)
    for b in beams.beams:
        phase = np.cos(q * (r @ np.array(b.direction)))
        total += b.intensity * _contract(b, V) * phase
    total *= K
    return total if total.ndim else float(total)


def near_zone_coefficients(beams, rhat):
    """Coefficients (c3, c1) of U ~ c3 / r^3 + c1 / r for q r -> 0.

    The retarded tensor and the cos(q.r) phase factor are expanded together through
    second order in q r.  ``c1`` is the 1/r attraction that survives when
    the static 1/r^3 part cancels.
    """
    rhat = np.asarray(rhat, dtype=float)
    rhat = rhat / np.linalg.norm(rhat, axis=-1, keepdims=True)
    outer = rhat[..., :, None] * rhat[..., None, :]
    S0 = _EYE - 3.0 * outer
    T0 = _EYE - outer
    q = beams.wavenumber
    K = _coupling_constant(beams.polarizability)
    c3 = np.zeros(rhat.shape[:-1])
    c1 = np.zeros(rhat.shape[:-1])
    for b in beams.beams:
        cos_b = rhat @ np.array(b.direction)
        ps = _contract(b, S0)
        pt = _contract(b, T0)
        c3 += b.intensity * ps
        c1 += b.intensity * (0.5 * ps * (1.0 - cos_b**2) - pt)
    c3 *= K
    c1 *= K * q**2
    if c1.ndim == 0:
        return float(c3), float(c1)
    return c3, c1


def near_zone_potential(beams, r):
    """Pair potential from the second-order near-zone expansion."""
    r, dist, rh = _split(r)
    c3, c1 = near_zone_coefficients(beams, rh)
    return c3 / dist**3 + c1 / dist


def triad_bracket(theta, phi):
    """Angular factor 7/3 + sum of fourth powers of the direction cosines."""
    st = np.sin(theta)
    return (7.0 / 3.0 + (st * np.cos(phi)) ** 4 + (st * np.sin(phi)) ** 4
            + np.cos(theta) ** 4)


def triad_prefactor(intensity, q, polarizability):
    """3 I q^2 alpha^2 / (16 pi c eps0^2): the triad potential is -prefactor * bracket / r."""
    return (3.0 * intensity * q**2 * polarizability**2
            / (16.0 * math.pi * const.c * const.epsilon_0**2))


def triad_potential(intensity, q, polarizability, r):
    """Closed-form near-zone potential of one axis-aligned triad."""
    r, dist, rh = _split(r)
    theta = np.arccos(np.clip(rh[..., 2], -1.0, 1.0))
    phi = np.arctan2(rh[..., 1], rh[..., 0])
    return -triad_prefactor(intensity, q, polarizability) * triad_bracket(theta, phi) / dist


def triad_beams(intensity, q, euler=EulerAngles(0.0, 0.0, 0.0), handedness=LEFT):
    """Three orthogonal beams along the axes of a frame rotated by ``euler``.

    The Euler angles rotate the coordinate frame, so the beams point along
    the rows of Rz(alpha) Ry(beta) Rz(gamma).
    """
    R = euler.matrix()
    return [Beam.along(R[k], intensity, q, handedness) for k in range(3)]


def build_triad(intensity, q, polarizability, euler=EulerAngles(0.0, 0.0, 0.0)):
    return BeamSet(tuple(triad_beams(intensity, q, euler)), polarizability, (euler,))


SIX_TRIAD_ANGLES = (
    (EulerAngles(0.0, math.pi / 4, math.pi / 8), 1.0),
    (EulerAngles(0.0, math.pi / 4, -math.pi / 8), 1.0),
    (EulerAngles(0.0, math.pi / 4, 3 * math.pi / 8), 1.0),
    (EulerAngles(0.0, math.pi / 4, -3 * math.pi / 8), 1.0),
    (EulerAngles(0.0, 0.0, math.pi / 8), 0.5),
    (EulerAngles(0.0, 0.0, -math.pi / 8), 0.5),
)


def build_six_triad(intensity, q, polarizability):
    """The 18-beam configuration whose near-zone potential is exactly -u/r."""
    if intensity < 0:
        raise ValueError("intensity must be >= 0")
    beams = []
    for euler, weight in SIX_TRIAD_ANGLES:
        beams.extend(triad_beams(weight * intensity, q, euler))
    return BeamSet(tuple(beams), polarizability,
                   tuple(e for e, _ in SIX_TRIAD_ANGLES))


def isotropic_coupling_u(intensity, q, polarizability):
    """u = (11 / 4 pi) I q^2 alpha^2 / (c eps0^2), in J m."""
    if intensity < 0:
        raise ValueError("intensity must be >= 0")
    return (11.0 / (4.0 * math.pi) * intensity * q**2 * polarizability**2
            / (const.c * const.epsilon_0**2))


def sphere_directions(n_samples, seed):
    """Deterministic scrambled-Sobol points mapped uniformly onto the sphere."""
    m = max(1, math.ceil(math.log2(n_samples)))
    pts = qmc.Sobol(d=2, scramble=True, seed=seed).random_base2(m)[:n_samples]
    z = 1.0 - 2.0 * pts[:, 0]
    phi = 2.0 * math.pi * pts[:, 1]
    s = np.sqrt(np.clip(1.0 - z**2, 0.0, None))
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def anisotropy_metric(beams, n_samples=10_000, seed=0):
    """Relative standard deviation of the near-zone 1/r coefficient over directions."""
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    _, c1 = near_zone_coefficients(beams, sphere_directions(n_samples, seed))
    mean = c1.mean()
    if mean == 0:
        return 0.0 if np.all(c1 == 0) else math.inf
    return float(c1.std() / abs(mean))


def interference_term(u, q, r):
    """Amplitude A(r) = -3 u x y / (q^2 r^5) of one oscillating cross term."""
    r, dist, _ = _split(r)
    A = -3.0 * u * r[..., 0] * r[..., 1] / (q**2 * dist**5)
    return A if A.ndim else float(A)


def angular_map(n_theta=91, n_phi=181):
    """Rows (theta, phi, bracket) on a regular grid covering the sphere."""
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    return np.column_stack([T.ravel(), P.ravel(), triad_bracket(T, P).ravel()])
