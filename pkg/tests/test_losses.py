import math

import numpy as np
import pytest
from scipy import integrate

from gravbec import constants as const
from gravbec.losses import (
    EXACT_FT_CONSTANT, FORMULA, INTEGRATED, LossInputs, QUOTED_FT_CONSTANT,
    condensate_depletion, ft_interference_oracle, interference_angular,
    interference_ft_constant, pair_production_rate)
from gravbec.physical_model import PhysicalParams, dimensionless
from gravbec.variational import G, TF_G, solve_lambda

M = const.m_Na23
HBAR = 1.054571817e-34


# -- Fourier constant -------------------------------------------------------------

@pytest.fixture(scope="module")
def direct():
    return interference_ft_constant(1.0, "direct")


@pytest.fixture(scope="module")
def harmonic():
    return interference_ft_constant(1.0, "harmonic")


def test_schemes_agree(direct, harmonic):
    assert direct.constant == pytest.approx(harmonic.constant, rel=1e-2)
    assert direct.error < 1e-4 * direct.constant
    assert harmonic.error < 1e-4 * harmonic.constant


def test_constant_closed_form(direct, harmonic):
    # independent oracle: only the l = 2 harmonic survives and its Bessel moment
    # int j_2(x)/x dx = 1/3 gives 16 pi^2 / 15
    assert harmonic.constant == pytest.approx(EXACT_FT_CONSTANT, rel=1e-6)
    assert direct.constant == pytest.approx(EXACT_FT_CONSTANT, rel=1e-3)


@pytest.mark.parametrize("method", ["direct", "harmonic"])
def test_constant_independent_of_k(method, direct, harmonic):
    ref = {"direct": direct, "harmonic": harmonic}[method].constant
    assert interference_ft_constant(2.0, method).constant == pytest.approx(ref, rel=1e-3)


def test_oracle_scales_as_u_squared():
    a = ft_interference_oracle(1.0, 2.0, 1.0, "harmonic")
    b = ft_interference_oracle(2.0, 2.0, 1.0, "harmonic")
    assert b / a == pytest.approx(4.0, rel=1e-12)
    assert a == pytest.approx(EXACT_FT_CONSTANT / 16.0, rel=1e-6)


def test_constant_validation():
    with pytest.raises(ValueError):
        interference_ft_constant(0.0)
    with pytest.raises(ValueError):
        interference_ft_constant(1.0, "fft")
    with pytest.raises(ValueError):
        ft_interference_oracle(1.0, 0.0, 1.0)


def test_angular_factor_is_pure_quadrupole():
    rng = np.random.default_rng(0)
    n = rng.normal(size=(1000, 3))
    n /= np.linalg.norm(n, axis=1)[:, None]
    f = interference_angular(n)
    assert np.allclose(f, -3 * n[:, 0] * n[:, 1])
    assert abs(f.mean()) < 0.1


# -- local rate ---------------------------------------------------------------------

def test_rate_zero_cases():
    assert pair_production_rate(0.0, 1e-44, 1e6, 1e4, M) == 0.0
    assert pair_production_rate(1e20, 0.0, 1e6, 1e4, M) == 0.0
    assert pair_production_rate(1e20, 1e-44, 1e6, 0.0, M) == 0.0


def test_rate_scalings():
    base = pair_production_rate(1e20, 1e-44, 1e6, 1e4, M)
    assert base > 0
    assert pair_production_rate(2e20, 1e-44, 1e6, 1e4, M) == pytest.approx(4 * base, rel=1e-14)
    assert pair_production_rate(1e20, 1e-44, 1e6, 4e4, M) == pytest.approx(2 * base, rel=1e-14)
    assert pair_production_rate(1e20, 2e-44, 1e6, 1e4, M) == pytest.approx(4 * base, rel=1e-14)
    assert pair_production_rate(1e20, 1e-44, 2e6, 1e4, M) == pytest.approx(base / 16, rel=1e-14)
    arr = pair_production_rate(np.array([1e20, 2e20]), 1e-44, 1e6, 1e4, M)
    assert arr.shape == (2,)


def test_rate_validation():
    with pytest.raises(ValueError):
        pair_production_rate(-1.0, 1e-44, 1e6, 1e4, M)
    with pytest.raises(ValueError):
        LossInputs(1e-44, 1e6, -1.0, M)
    with pytest.raises(ValueError):
        LossInputs(1e-44, 0.0, 1.0, M)
    assert LossInputs(1e-44, 1e6, 1e4, M).pair_momentum == pytest.approx(
        math.sqrt(M * 1e4 / HBAR), rel=1e-8)


# -- condensate depletion -------------------------------------------------------------

def test_formula_values():
    w0, W = 2 * math.pi * 100, 2 * math.pi * 1e4
    g = condensate_depletion(G, 5.0, 0.0, W, w0, 1.0)
    assert g.rate_per_omega0 == pytest.approx(5.0**5 * math.sqrt(W / w0), rel=1e-14)
    t = condensate_depletion(TF_G, 5.0, 1.0, W, w0, 1.0)
    assert t.rate_per_omega0 == pytest.approx(5.0**3.5 * math.sqrt(W / w0), rel=1e-14)
    assert condensate_depletion(G, 5.0, 0.0, W, w0, 2.0).rate == pytest.approx(g.rate / 16)


def test_depletion_validation():
    with pytest.raises(ValueError):
        condensate_depletion(TF_G, 1.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        condensate_depletion(TF_G, 1.0, -1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        condensate_depletion("TF-O", 1.0, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        condensate_depletion(G, -1.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        condensate_depletion(G, 1.0, 0.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        condensate_depletion(G, 1.0, 0.0, 1.0, 1.0, 1.0, mode="exact")
    assert condensate_depletion(G, 1.0, 0.0, 0.0, 1.0, 1.0).rate == 0.0
    assert condensate_depletion(G, 0.0, 0.0, 1.0, 1.0, 1.0, mode=INTEGRATED).rate == 0.0


def test_integrated_tracks_formula_in_g_region():
    ratios = [condensate_depletion(G, u, 0.0, 1e4, 1e2, 1.0, INTEGRATED).rate
              / condensate_depletion(G, u, 0.0, 1e4, 1e2, 1.0).rate for u in (10, 30, 100)]
    assert max(ratios) / min(ratios) < 1.05
    omegas = [condensate_depletion(G, 20.0, 0.0, W, 1e2, 1.0, INTEGRATED).rate
              / condensate_depletion(G, 20.0, 0.0, W, 1e2, 1.0).rate for W in (1e3, 1e4)]
    assert omegas[0] == pytest.approx(omegas[1], rel=1e-12)


def test_integrated_tracks_formula_in_tfg_region():
    ratios = [condensate_depletion(TF_G, u, s, 1e4, 1e2, 1.0, INTEGRATED).rate
              / condensate_depletion(TF_G, u, s, 1e4, 1e2, 1.0).rate
              for u, s in [(1e3, 10.0), (1e4, 10.0), (1e4, 100.0)]]
    assert max(ratios) / min(ratios) < 1.01


def test_integrated_equals_local_rate_over_profile():
    # oracle: integrate the local SI rate over the physical Gaussian profile
    omega0, Omega, N = 2 * math.pi * 100, 2 * math.pi * 1e4, 1e5
    q = 2 * math.pi / 10.6e-6
    p = PhysicalParams(M, 0.0, 4e-46, omega0, N, q)
    ut = dimensionless(p).u_tilde
    lam = solve_lambda(ut, 0.0).lam
    L = lam * p.l0

    def rate(r):
        rho = N * math.exp(-(r / L) ** 2) / (math.pi**1.5 * L**3)
        return 4 * math.pi * r * r * pair_production_rate(rho, p.u, q, Omega, M)
    total, _ = integrate.quad(rate, 0, 12 * L, epsrel=1e-12)
    est = condensate_depletion(G, ut, 0.0, Omega, omega0, q * p.l0, INTEGRATED)
    assert est.rate == pytest.approx(total, rel=1e-6)


def test_tfg_l2_closed_form():
    # int rho^2 = pi / (8 R0^3) for the sine profile; check via the integrated rate
    u, s = 1e3, 30.0
    R0 = math.pi * math.sqrt(s / (3 * u))
    est = condensate_depletion(TF_G, u, s, 1.0, 1.0, 1.0, INTEGRATED, constant=1.0)
    assert est.rate == pytest.approx(0.75 * u**2 * math.pi / (8 * R0**3), rel=1e-9)


def test_report_lines():
    text = condensate_depletion(G, 5.0, 0.0, 1e4, 1e2, 1.0, INTEGRATED).report()
    keys = [line.split("=")[0] for line in text.strip().splitlines()]
    assert keys[:4] == ["mode", "region", "rate", "rate_per_omega0"]
    assert "ft_constant" in keys
    assert f"ft_constant={QUOTED_FT_CONSTANT:.15e}" in text
