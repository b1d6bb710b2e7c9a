"""Command-line front end.

Usage::

    gravbec <command> [--config FILE] [--out DIR] [--seed N] [--explain]

The configuration is a flat ``key = value [unit]`` file with ``#``
comments.  Every command writes a ``<command>.txt`` key=value report and,
where it has tabular output, CSV files whose first line is a comment with
the package version and a hash of the parsed configuration.

Exit status: 0 on success, 1 when a computation fails (collapse,
non-convergence, invalid physics input), 2 for configuration errors.
"""

import argparse
import hashlib
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import constants as const
from . import laser_field, losses, mean_field, physical_model, variational


class ConfigError(ValueError):
    """Malformed or incomplete configuration."""


@dataclass(frozen=True)
class Key:
    kind: type                   # float, int, bool or str
    unit: str                    # "" for dimensionless
    doc: str
    default: object = None       # None means required
    choices: tuple = ()

    @property
    def required(self):
        return self.default is None


SCHEMAS = {
    "laser-check": {
        "configuration": Key(str, "", "beam geometry", "six-triad", ("six-triad", "triad")),
        "intensity": Key(float, "W/m^2", "intensity per unit-weight beam"),
        "wavelength": Key(float, "m", "laser wavelength"),
        "alpha_volume": Key(float, "m^3", "polarizability volume", const.alpha_volume_Na),
        "mass": Key(float, "kg", "atomic mass", const.m_Na23),
        "n_samples": Key(int, "", "directions for the anisotropy metric", 10_000),
        "n_theta": Key(int, "", "polar grid points of the angular map", 91),
        "n_phi": Key(int, "", "azimuthal grid points of the angular map", 181),
    },
    "variational": {
        "u_tilde": Key(float, "", "dimensionless 1/r strength"),
        "s_tilde": Key(float, "", "dimensionless contact strength"),
        "trap": Key(bool, "", "include the harmonic trap", True),
        "x_min": Key(float, "", "trapless energy curve: smallest x = lambda u~", 0.05),
        "x_max": Key(float, "", "trapless energy curve: largest x", 10.0),
        "n_x": Key(int, "", "trapless energy curve: number of points", 400),
    },
    "phase-diagram": {
        "log_u_min": Key(float, "", "log10 of the smallest u~"),
        "log_u_max": Key(float, "", "log10 of the largest u~"),
        "log_s_min": Key(float, "", "log10 of the smallest s~"),
        "log_s_max": Key(float, "", "log10 of the largest s~"),
        "n_u": Key(int, "", "grid points along u~"),
        "n_s": Key(int, "", "grid points along s~"),
        "trap": Key(bool, "", "include the harmonic trap", True),
    },
    "ground-state": {
        "u_tilde": Key(float, "", "dimensionless 1/r strength"),
        "s_tilde": Key(float, "", "dimensionless contact strength"),
        "trap": Key(bool, "", "include the harmonic trap", True),
        "n": Key(int, "", "radial grid points", 4096),
        "r_max": Key(float, "", "grid extent in the length unit (0 = automatic)", 0.0),
        "tol": Key(float, "", "relative energy change for convergence", 1e-10),
        "init": Key(str, "", "initial state", "variational", ("variational", "gaussian")),
    },
    "tfg-compare": {
        "a": Key(float, "m", "scattering length"),
        "a_star": Key(float, "m", "gravitational Bohr radius"),
        "N": Key(int, "", "atom number"),
        "n": Key(int, "", "radial grid points", 4096),
    },
    "loss-rate": {
        "region": Key(str, "", "phase-diagram region", None, (variational.G, variational.TF_G)),
        "u_tilde": Key(float, "", "dimensionless 1/r strength"),
        "s_tilde": Key(float, "", "dimensionless contact strength", 0.0),
        "Omega": Key(float, "rad/s", "interference beat frequency"),
        "omega0": Key(float, "rad/s", "trap frequency"),
        "q_l0": Key(float, "", "laser wavenumber times oscillator length"),
        "ft_method": Key(str, "", "also evaluate the Fourier constant numerically",
                         "none", ("none",) + losses.METHODS),
    },
    "regime-check": {
        "mass": Key(float, "kg", "atomic mass"),
        "a": Key(float, "m", "scattering length"),
        "u": Key(float, "J*m", "1/r coupling strength"),
        "omega0": Key(float, "rad/s", "trap frequency"),
        "N": Key(int, "", "atom number"),
        "q": Key(float, "1/m", "laser wavenumber"),
    },
}

COMMANDS = tuple(SCHEMAS)


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_dir: Path = Path(".")
    seed: int = 0

    def digest(self):
        """Short SHA-256 of the canonical parameter listing."""
        text = "\n".join([f"command={self.command}", f"seed={self.seed}"]
                         + [f"{k}={self.params[k]!r}" for k in sorted(self.params)])
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _convert(name, key, raw, lineno):
    if key.kind is bool:
        low = raw.lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
        raise ConfigError(f"line {lineno}: {name} expects true/false, got {raw!r}")
    if key.kind is str:
        if key.choices and raw not in key.choices:
            raise ConfigError(f"line {lineno}: {name} must be one of {', '.join(key.choices)}")
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {name} expects a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"line {lineno}: {name} must be finite, got {raw!r}")
    if key.kind is int:
        if not value.is_integer():
            raise ConfigError(f"line {lineno}: {name} expects an integer, got {raw!r}")
        return int(value)
    return value


def parse_config(text, command, output_dir=".", seed=0):
    """Parse ``key = value [unit]`` lines into a :class:`RunConfig`.

    A unit after the value must match the documented unit of the key.
    Raises :class:`ConfigError` for malformed lines, duplicate or unknown
    keys and missing required keys (all listed at once).
    """
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}")
    schema = SCHEMAS[command]
    params = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition("=")
        name, rest = name.strip(), rest.strip()
        if not sep or not name or not rest:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if name in params:
            raise ConfigError(f"line {lineno}: duplicate key {name!r}")
        if name not in schema:
            raise ConfigError(f"line {lineno}: unknown key {name!r} for {command}")
        key = schema[name]
        tokens = rest.split(None, 1)
        raw, unit = tokens[0], (tokens[1].strip() if len(tokens) > 1 else None)
        if unit is not None and unit != key.unit:
            expected = key.unit or "no unit"
            raise ConfigError(f"line {lineno}: {name} is in {expected}, got unit {unit!r}")
        params[name] = _convert(name, key, raw, lineno)
    missing = [k for k, key in schema.items() if key.required and k not in params]
    if missing:
        raise ConfigError(f"missing required keys for {command}: {', '.join(missing)}")
    for k, key in schema.items():
        params.setdefault(k, key.default)
    return RunConfig(command, params, Path(output_dir), int(seed))


def explain(config):
    """Typed parameters with units and descriptions, one per line."""
    schema = SCHEMAS[config.command]
    lines = []
    for k, key in schema.items():
        unit = f" [{key.unit}]" if key.unit else ""
        source = "required" if key.required else f"default {key.default!r}"
        lines.append(f"{k} = {config.params[k]!r}{unit}  # {key.doc}; {source}")
    return "\n".join(lines) + "\n"


# -- output helpers --------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15e}"
    return str(v)


class _Writer:
    def __init__(self, config):
        self.config = config
        self.dir = config.output_dir
        self.dir.mkdir(parents=True, exist_ok=True)
        self.comment = f"# gravbec {__version__} config={config.digest()}"

    def csv(self, name, header, rows):
        lines = [self.comment, ",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        (self.dir / name).write_text("\n".join(lines) + "\n")

    def report(self, items):
        items = dict(items)
        items.setdefault("seed", self.config.seed)
        text = "".join(f"{k}={_fmt(v)}\n" for k, v in items.items())
        (self.dir / f"{self.config.command}.txt").write_text(text)
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------------

def _laser_check(p, config, out):
    q = 2.0 * math.pi / p["wavelength"]
    alpha = const.polarizability_from_volume(p["alpha_volume"])
    if p["configuration"] == "six-triad":
        beams = laser_field.build_six_triad(p["intensity"], q, alpha)
    else:
        beams = laser_field.build_triad(p["intensity"], q, alpha)
    dirs = laser_field.sphere_directions(p["n_samples"], config.seed)
    _, c1 = laser_field.near_zone_coefficients(beams, dirs)
    u = -float(c1.mean())
    u_iso = laser_field.isotropic_coupling_u(p["intensity"], q, alpha)
    params = physical_model.PhysicalParams(p["mass"], 0.0, u, 0.0, 1.0, q)
    out.csv("angular_map.csv", ("theta", "phi", "bracket_value"),
            laser_field.angular_map(p["n_theta"], p["n_phi"]))
    out.report({
        "configuration": p["configuration"], "beams": len(beams.beams),
        "wavenumber": q, "u": u, "u_six_triad": u_iso,
        "u_relative_error": u / u_iso - 1.0,
        "anisotropy": laser_field.anisotropy_metric(beams, p["n_samples"], config.seed),
        "a_star": physical_model.gravitational_bohr_radius(params),
        "potential_at_100nm_eV": u / 100e-9 / const.eV,
    })


def _variational(p, config, out):
    sol = variational.solve_lambda(p["u_tilde"], p["s_tilde"], p["trap"])
    items = {"u_tilde": p["u_tilde"], "s_tilde": p["s_tilde"], "trap": p["trap"],
             "kind": sol.kind, "lambda": sol.lam, "energy": sol.energy_per_particle}
    if sol.exists:
        b = sol.breakdown
        items.update(T=b.T, V_ext=b.V_ext, U_u=b.U_u, U_s=b.U_s,
                     quintic_residual=sol.quintic_residual(),
                     virial_residual=sol.virial_residual())
    items["stationary_points"] = len(sol.stationary_points)
    items["region"] = sol.region if sol.region is not None else "undefined"
    if not p["trap"]:
        if not p["u_tilde"] > 0:
            raise ValueError("trapless energy curves need u_tilde > 0")
        c = p["s_tilde"] * p["u_tilde"]
        x = np.linspace(p["x_min"], p["x_max"], p["n_x"])
        out.csv("energy_curve.csv", ("x", "f"),
                zip(x, variational.trapless_scaled_energy(x, c)))
        items["c"] = c
    out.report(items)


def _phase_diagram(p, config, out):
    rows = variational.phase_diagram((p["log_u_min"], p["log_u_max"]),
                                     (p["log_s_min"], p["log_s_max"]),
                                     p["n_u"], p["n_s"], p["trap"])
    out.csv("phase_diagram.csv", ("u_tilde", "s_tilde", "lambda", "region"), rows)
    counts = {}
    for row in rows:
        counts[row[3]] = counts.get(row[3], 0) + 1
    out.report({"rows": len(rows), "trap": p["trap"],
                **{f"count_{k}": v for k, v in sorted(counts.items())}})


def _ground_state(p, config, out):
    g_u, g_s = physical_model.couplings_from_tilde(p["u_tilde"], p["s_tilde"])
    grid = mean_field.RadialGrid(p["r_max"], p["n"]) if p["r_max"] > 0 else None
    gs = mean_field.ground_state(g_s, g_u, p["trap"], grid=grid, tol=p["tol"],
                                 init=p["init"], n=p["n"])
    state, b = gs
    phi = mean_field.hartree_potential(state, gs.g_u) + mean_field.contact_potential(state, gs.g_s)
    out.csv("profile.csv", ("r", "psi", "density", "hartree_potential"),
            zip(state.grid.r, state.psi, state.density, phi))
    out.report({"units": state.units, "g_s": gs.g_s, "g_u": gs.g_u, "trap": p["trap"],
                "energy": b.total, "T": b.T, "V_ext": b.V_ext, "U_u": b.U_u, "U_s": b.U_s,
                "chemical_potential": b.chemical_potential, "virial_residual": gs.virial,
                "release_energy": mean_field.release_energy(b, 1.0),
                "rms_radius": math.sqrt(state.mean_square_radius()),
                "iterations": gs.iterations, "residual": gs.residual,
                "grid_points": state.grid.n, "r_max": state.grid.r_max})


def _tfg_compare(p, config, out):
    a, a_star, N = p["a"], p["a_star"], p["N"]
    if not (a > 0 and a_star > 0 and N >= 1):
        raise ValueError("tfg-compare needs a > 0, a_star > 0 and N >= 1")
    length = a_star / (4.0 * math.pi**2 * N)        # gravitational length unit (m)
    R0 = mean_field.tfg_radius(a, a_star) / length
    grid = mean_field.tfg_grid(R0, p["n"])
    g_s = 4.0 * R0**2 / math.pi                     # 16 pi^3 N^2 a / a*
    gs = mean_field.ground_state(g_s, 1.0, trap=False, grid=grid)
    state = gs.state
    ref = mean_field.tfg_state(R0, grid)
    ms = state.mean_square_radius()
    ms_ref = R0**2 * (math.pi**2 - 6.0) / math.pi**2
    r0_fit = math.sqrt(ms * math.pi**2 / (math.pi**2 - 6.0)) * length
    rho_c = N * state.central_density() / length**3
    rho_c_ref = 2.0 * math.pi * N / (a * a_star) ** 1.5
    out.csv("tfg_compare.csv", ("r", "density", "density_tf"),
            zip(grid.r * length, N * state.density / length**3, N * ref.density / length**3))
    out.report({"R0": R0 * length, "R0_from_rms": r0_fit,
                "R0_relative_shift": r0_fit / (R0 * length) - 1.0,
                "density_l2_error": mean_field.density_l2_error(state, ref),
                "rms_radius_squared_error": ms / ms_ref - 1.0,
                "central_density": rho_c, "central_density_tf": rho_c_ref,
                "central_density_error": rho_c / rho_c_ref - 1.0,
                "virial_residual": gs.virial, "iterations": gs.iterations,
                "gravitational_length": length})


def _loss_rate(p, config, out):
    args = (p["region"], p["u_tilde"], p["s_tilde"], p["Omega"], p["omega0"], p["q_l0"])
    formula = losses.condensate_depletion(*args, mode=losses.FORMULA)
    integrated = losses.condensate_depletion(*args, mode=losses.INTEGRATED)
    items = {"region": p["region"], "u_tilde": p["u_tilde"], "s_tilde": p["s_tilde"],
             "Omega": p["Omega"], "omega0": p["omega0"], "q_l0": p["q_l0"],
             "formula_rate": formula.rate, "formula_rate_per_omega0": formula.rate_per_omega0,
             "integrated_rate": integrated.rate,
             "integrated_rate_per_omega0": integrated.rate_per_omega0,
             "ft_constant": losses.QUOTED_FT_CONSTANT, "ft_convention": losses.FT_CONVENTION}
    if p["ft_method"] != "none":
        est = losses.interference_ft_constant(1.0, p["ft_method"])
        oracle = losses.condensate_depletion(*args, mode=losses.INTEGRATED,
                                             constant=est.constant)
        items.update(oracle_ft_constant=est.constant, oracle_ft_error=est.error,
                     oracle_integrated_rate=oracle.rate,
                     oracle_integrated_rate_per_omega0=oracle.rate_per_omega0)
    out.report(items)


def _regime_check(p, config, out):
    params = physical_model.PhysicalParams(p["mass"], p["a"], p["u"], p["omega0"], p["N"],
                                           p["q"])
    pair = physical_model.dimensionless(params)
    sol = variational.solve_lambda(pair.u_tilde, pair.s_tilde, trap=True)
    if not sol.exists:
        raise ValueError("no variational minimum: the condensate collapses")
    width = sol.lam * params.l0
    L = width * math.sqrt(1.5)
    rho_max = variational.gaussian_peak_density(sol.lam, params.N, params.l0)
    rep = physical_model.validate_regime(params, rho_max, L)
    items = {"u_tilde": pair.u_tilde, "s_tilde": pair.s_tilde, "lambda": sol.lam,
             "l0": params.l0, "a_star": params.a_star, "rms_radius": L, "rho_max": rho_max}
    for name in ("diluteness", "mfa_gravity", "near_zone", "hierarchy_upper",
                 "hierarchy_lower"):
        chk = getattr(rep, name)
        items[name] = chk.value
        items[f"{name}_threshold"] = chk.threshold
        items[f"{name}_ok"] = chk.passed
    items.update(max_misalignment=rep.max_misalignment,
                 max_intensity_noise=rep.max_intensity_noise, all_ok=rep.all_ok)
    out.report(items)


HANDLERS = {
    "laser-check": _laser_check,
    "variational": _variational,
    "phase-diagram": _phase_diagram,
    "ground-state": _ground_state,
    "tfg-compare": _tfg_compare,
    "loss-rate": _loss_rate,
    "regime-check": _regime_check,
}

MODULE_ERRORS = (ValueError, ArithmeticError, mean_field.CollapseError,
                 mean_field.ConvergenceError, losses.QuadratureError)


def run(config):
    """Execute a parsed configuration; returns the exit status."""
    try:
        HANDLERS[config.command](config.params, config, _Writer(config))
    except MODULE_ERRORS as exc:
        print(f"gravbec {config.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def _epilog():
    parts = ["configuration keys (key = value [unit]):"]
    for cmd, schema in SCHEMAS.items():
        parts.append(f"  {cmd}:")
        for k, key in schema.items():
            unit = f" [{key.unit}]" if key.unit else ""
            dflt = "" if key.required else f" (default {key.default!r})"
            parts.append(f"    {k}{unit}: {key.doc}{dflt}")
    return "\n".join(parts)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gravbec",
        description="Laser-induced 1/r interactions in Bose-Einstein condensates.",
        epilog=_epilog(), formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="flat key = value configuration file")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled quantities")
    parser.add_argument("--explain", action="store_true",
                        help="print the typed configuration with units before running")
    parser.add_argument("--version", action="version", version=f"gravbec {__version__}")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text() if args.config is not None else ""
        config = parse_config(text, args.command, args.out, args.seed)
    except (ConfigError, OSError) as exc:
        print(f"gravbec {args.command}: config error: {exc}", file=sys.stderr)
        return 2
    if args.explain:
        sys.stdout.write(explain(config))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
