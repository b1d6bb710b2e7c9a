"""Physical constants (SI, CODATA 2018 via scipy.constants) and atomic data."""

from scipy import constants as _sc

hbar = _sc.hbar                     # J s
h = _sc.h                           # J s
c = _sc.c                           # m / s
epsilon_0 = _sc.epsilon_0           # F / m
amu = _sc.physical_constants["atomic mass constant"][0]   # kg
eV = _sc.eV                         # J

# Atomic masses (kg)
m_Na23 = 22.98976928 * amu
m_Rb87 = 86.909180527 * amu
m_Li7 = 7.016003437 * amu

# Static polarizability volume of sodium, 24.08e-24 cm^3
alpha_volume_Na = 24.08e-30         # m^3


def polarizability_from_volume(alpha_volume):
    """Convert a polarizability volume (m^3) to SI polarizability (C m^2 / V)."""
    return 4.0 * _sc.pi * epsilon_0 * alpha_volume


TABLE = {
    "hbar": hbar,
    "h": h,
    "c": c,
    "epsilon_0": epsilon_0,
    "amu": amu,
    "eV": eV,
    "m_Na23": m_Na23,
    "m_Rb87": m_Rb87,
    "m_Li7": m_Li7,
    "alpha_volume_Na": alpha_volume_Na,
}
