import os
import subprocess
import sys

import numpy as np
import pytest

from gravbec import _kernels, _kernels_py

cy = pytest.importorskip("gravbec._kernels_cy")


def setup_case(n=700, seed=0):
    rng = np.random.default_rng(seed)
    dr = 12.0 / (n + 1)
    r = dr * np.arange(1, n + 1)
    u = r * np.exp(-0.5 * r**2) * (1 + 0.1 * rng.random(n))
    u /= np.sqrt(4 * np.pi * dr * np.dot(u, u))
    return u, r, dr


def close(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.allclose(a, b, rtol=1e-12, atol=1e-12 * np.max(np.abs(b)))


def test_backend_names():
    assert _kernels_py.BACKEND == "python"
    assert cy.BACKEND == "cython"
    assert _kernels.BACKEND in ("python", "cython")


@pytest.mark.parametrize("seed", [0, 1])
def test_kinetic_apply_parity(seed):
    u, r, dr = setup_case(seed=seed)
    assert close(cy.kinetic_apply(u, dr), _kernels_py.kinetic_apply(u, dr))


def test_gravity_potential_parity():
    u, r, dr = setup_case()
    assert close(cy.gravity_potential(u, r, dr, 2.3), _kernels_py.gravity_potential(u, r, dr, 2.3))


@pytest.mark.parametrize("trap", [True, False])
def test_energy_terms_parity(trap):
    u, r, dr = setup_case()
    assert close(cy.energy_terms(u, r, dr, 1.5, 0.7, trap),
                 _kernels_py.energy_terms(u, r, dr, 1.5, 0.7, trap))


@pytest.mark.parametrize("trap", [True, False])
def test_effective_potential_parity(trap):
    u, r, dr = setup_case()
    assert close(cy.effective_potential(u, r, dr, -0.4, 1.1, trap),
                 _kernels_py.effective_potential(u, r, dr, -0.4, 1.1, trap))


@pytest.mark.parametrize("dt", [1e-3, 0.5, 20.0])
def test_flow_step_parity(dt):
    u, r, dr = setup_case()
    assert close(cy.flow_step(u, r, dr, 1.5, 0.7, True, dt),
                 _kernels_py.flow_step(u, r, dr, 1.5, 0.7, True, dt))


def test_kinetic_energy_matches_operator():
    u, r, dr = setup_case()
    T, *_ = _kernels_py.energy_terms(u, r, dr, 0.0, 0.0, False)
    direct = 4 * np.pi * dr * np.dot(u, _kernels_py.kinetic_apply(u, dr))
    assert T == pytest.approx(direct, rel=1e-10)


def test_pure_python_override():
    env = dict(os.environ, GRAVBEC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c",
                          "from gravbec import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
