"""Acceptance criteria; each test prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also collected into the terminal summary.
"""

import math
import subprocess
import sys
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from test_cli import CONFIGS
from gravbec import constants as const
from gravbec import laser_field as lf
from gravbec import losses
from gravbec import mean_field as mf
from gravbec import variational as var
from gravbec.physical_model import couplings_from_tilde


def record(n, title, checks, elapsed, budget=None):
    """Print and store the line for criterion ``n``; return overall pass."""
    checks = dict(checks)
    if budget is not None:
        checks[f"runtime {elapsed:.2f}s < {budget:g}s"] = elapsed < budget
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    detail = "; ".join(checks) if ok else "failed: " + "; ".join(failed)
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


I0 = 1e8
Q = 2 * math.pi / 10.6e-6
ALPHA = const.polarizability_from_volume(const.alpha_volume_Na)


def test_c01_six_triad_isotropy():
    t = time.perf_counter()
    beams = lf.build_six_triad(I0, Q, ALPHA)
    aniso = lf.anisotropy_metric(beams, 10_000, seed=0)
    _, c1 = lf.near_zone_coefficients(beams, lf.sphere_directions(10_000, 0))
    expected = 11 / (4 * math.pi) * I0 * Q**2 * ALPHA**2 / (const.c * const.epsilon_0**2)
    err = float(np.max(np.abs(-c1 / expected - 1)))
    elapsed = time.perf_counter() - t
    assert record(1, "six-triad isotropy", {
        f"anisotropy {aniso:.2e} < 1e-12": aniso < 1e-12,
        f"coefficient error {err:.2e} < 1e-10": err < 1e-10}, elapsed, 1.0)


def test_c02_triad_angular_map():
    t = time.perf_counter()
    top = lf.triad_bracket(0.0, 0.0)
    diag = lf.triad_bracket(math.acos(1 / math.sqrt(3)), math.pi / 4)
    n = lf.sphere_directions(10_000, seed=0)
    mc = float(np.mean(lf.triad_bracket(np.arccos(n[:, 2]), np.arctan2(n[:, 1], n[:, 0]))))
    elapsed = time.perf_counter() - t
    assert record(2, "triad angular map", {
        f"theta=0 bracket {top:.16g}": abs(top - 10 / 3) <= 1e-14,
        f"(1,1,1) bracket {diag:.16g}": abs(diag - 8 / 3) <= 1e-14,
        f"average {mc:.6f} vs 44/15": abs(mc - 44 / 15) < 1e-3}, elapsed, 1.0)


DEEP = {var.G: (1e4, 1e-7), var.TF_G: (1e4, 1e3), var.TF_O: (1e-3, 1e6),
        var.IDEAL: (1e-4, 1e-4)}


def test_c03_quintic_solver():
    t = time.perf_counter()
    checks = {}
    for u, s in [(0.0, 0.0), (1.0, 1.0)]:
        lam = var.solve_lambda(u, s).lam
        checks[f"lambda({u:g},{s:g}) - 1 = {lam - 1:.1e}"] = abs(lam - 1) <= 1e-12
    closed = {var.G: lambda u, s: 1 / u, var.TF_G: lambda u, s: math.sqrt(s / u),
              var.TF_O: lambda u, s: s**0.2, var.IDEAL: lambda u, s: 1.0}
    for region, (u, s) in DEEP.items():
        lam = var.solve_lambda(u, s).lam
        rel = abs(lam / closed[region](u, s) - 1)
        checks[f"{region} radius off by {rel:.1e}"] = (
            rel < 0.01 and var.classify_region(u, s) == region)
    assert record(3, "quintic solver", checks, time.perf_counter() - t, 1.0)


def test_c04_virial_identity():
    t = time.perf_counter()
    worst = 0.0
    for lu in np.linspace(-4, 4, 17):
        for ls in np.linspace(-4, 4, 17):
            for sign in (1.0, -1.0):
                for trap in (True, False):
                    u, s = 10.0**lu, sign * 10.0**ls
                    for p in var.solve_lambda(u, s, trap).stationary_points:
                        b = var.breakdown(p.lam, u, s, trap)
                        res = (-b.T + b.V_ext - 0.5 * b.U_u - 1.5 * b.U_s) / b.T
                        worst = max(worst, abs(res))
    mf_worst = 0.0
    for u, s, trap in [(0.5, 0.5, True), (1.0, 1.0, True), (5.0, 0.1, True),
                       (0.2, 20.0, True), (0.0, -0.3, True), (1.0, 0.0, False),
                       (1.0, 2.0, False)]:
        g_u, g_s = couplings_from_tilde(u, s)
        mf_worst = max(mf_worst, abs(mf.ground_state(g_s, g_u, trap).virial))
    assert record(4, "virial identity", {
        f"quintic roots worst {worst:.1e} < 1e-9": worst < 1e-9,
        f"mean-field states worst {mf_worst:.1e} < 1e-4": mf_worst < 1e-4},
        time.perf_counter() - t)


def test_c05_collapse_thresholds():
    t = time.perf_counter()
    c = var.trapless_collapse_boundary()
    n0, ng = var.critical_number(-1.0, 1.0, 1.0)
    assert record(5, "collapse thresholds", {
        f"boundary {c:.9f}": abs(c + 0.25) < 1e-6,
        f"N_cr gravity {ng:.5f} sqrt(a*/|a|)": abs(ng / 0.1727 - 1) < 1e-3,
        f"N_cr trap {n0:.5f} l0/|a|": abs(n0 / 0.6705 - 1) < 1e-4},
        time.perf_counter() - t, 1.0)


def test_c06_oscillator():
    t = time.perf_counter()
    gs = mf.ground_state(0.0, 0.0, True, grid=mf.RadialGrid(12.0, 4096))
    err = abs(gs.energy.total - 1.5)
    assert record(6, "mean-field oscillator", {f"|E - 3/2| = {err:.1e} < 1e-6": err < 1e-6},
                  time.perf_counter() - t, 30.0)


def _tfg_solve(a, a_star, N, n=4096):
    """Deep TF-G ground state; returns (solver state, TF state, length unit, R0 grav)."""
    length = a_star / (4 * math.pi**2 * N)
    R0 = mf.tfg_radius(a, a_star) / length
    grid = mf.tfg_grid(R0, n)
    gs = mf.ground_state(4 * R0**2 / math.pi, 1.0, trap=False, grid=grid)
    return gs.state, mf.tfg_state(R0, grid), length, R0


def test_c07_tfg_profile():
    t = time.perf_counter()
    a, a_star = 1e-9, 1e-3
    checks = {}
    fitted = []
    for N in (1e5, 2e5):
        state, ref, length, R0 = _tfg_solve(a, a_star, N)
        l2 = mf.density_l2_error(state, ref)
        ms_ref = R0**2 * (math.pi**2 - 6) / math.pi**2
        rms = state.mean_square_radius() / ms_ref - 1
        fitted.append(math.sqrt(state.mean_square_radius() / ms_ref) * R0 * length)
        rho_c = N * state.central_density() / length**3
        rho_ref = 2 * math.pi * N / (a * a_star) ** 1.5
        cd = rho_c / rho_ref - 1
        checks[f"N={N:g}: L2 {l2:.2%}"] = l2 < 0.05
        checks[f"N={N:g}: rms^2 {rms:+.2%}"] = abs(rms) < 0.02
        checks[f"N={N:g}: central density {cd:+.2%}"] = abs(cd) < 0.05
    shift = fitted[1] / fitted[0] - 1
    r0 = mf.tfg_radius(a, a_star)
    checks[f"R0 shift between N {shift:+.2%}"] = abs(shift) < 0.01
    checks[f"R0 vs sqrt(a a*)/2 {fitted[0] / r0 - 1:+.2%}"] = abs(fitted[0] / r0 - 1) < 0.01
    assert record(7, "TF-G profile", checks, time.perf_counter() - t, 300.0)


def test_c08_boson_star():
    t = time.perf_counter()
    gs = mf.ground_state(0.0, 1.0, trap=False)
    bound = -1 / (6 * math.pi)
    margin = (bound - gs.energy.total) / abs(bound)
    vir = abs(2 * gs.energy.T + gs.energy.U_u) / gs.energy.T
    assert record(8, "boson star", {
        f"E={gs.energy.total:.8f} margin {margin:.2%} in (0, 15%)": 0 < margin < 0.15,
        f"virial {vir:.1e} < 1e-4": vir < 1e-4}, time.perf_counter() - t, 300.0)


def test_c09_fourier_oracle():
    t = time.perf_counter()
    d1 = losses.interference_ft_constant(1.0, "direct")
    d2 = losses.interference_ft_constant(3.0, "direct")
    h1 = losses.interference_ft_constant(1.0, "harmonic")
    h2 = losses.interference_ft_constant(3.0, "harmonic")
    quoted = losses.QUOTED_FT_CONSTANT
    rel = abs(d1.constant / quoted - 1)
    kdep = max(abs(d2.constant / d1.constant - 1), abs(h2.constant / h1.constant - 1))
    agree = abs(d1.constant / h1.constant - 1)
    assert record(9, "Fourier oracle", {
        f"constant {d1.constant:.5f} vs {quoted} off by {rel:.0%}": rel < 0.01,
        f"k-dependence {kdep:.1e} < 1e-3": kdep < 1e-3,
        f"direct vs harmonic {agree:.1e} < 1e-2": agree < 1e-2},
        time.perf_counter() - t, 120.0)


def test_c10_loss_estimates():
    t = time.perf_counter()
    rest = (2 * math.pi * 1e4, 2 * math.pi * 1e2, 1.0)      # Omega, omega0, q l0
    g = losses.condensate_depletion(var.G, 5.0, 0.0, *rest).rate_per_omega0
    tf = losses.condensate_depletion(var.TF_G, 5.0, 1.0, *rest).rate_per_omega0
    assert record(10, "loss estimates", {
        f"G {g:.3e} omega0 vs 6e4": 1 / 3 <= g / 6e4 <= 3,
        f"TF-G {tf:.3e} omega0 vs 6e3": 1 / 3 <= tf / 6e3 <= 3},
        time.perf_counter() - t, 1.0)


def test_c11_cli_determinism(tmp_path):
    t = time.perf_counter()
    checks = {}
    for command, text in CONFIGS.items():
        cfg = tmp_path / f"{command}.cfg"
        cfg.write_text(text)
        outs = []
        for run in ("a", "b"):
            out = tmp_path / command / run
            res = subprocess.run([sys.executable, "-m", "gravbec", command, "--config",
                                  str(cfg), "--out", str(out), "--seed", "7"],
                                 capture_output=True)
            outs.append((res.returncode, {p.name: p.read_bytes()
                                          for p in sorted(out.glob("*"))}))
        checks[command] = outs[0][0] == 0 and outs[0] == outs[1]
    assert record(11, "CLI determinism", checks, time.perf_counter() - t)
