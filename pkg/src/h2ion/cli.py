"""Command-line front end.

Every subcommand reads one config file, writes CSV files into the output
directory and prints a short report.  Exit codes: 0 success, 1 computation
failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .coefficients import (CoefficientError, MissingCoefficientError, SpinState, load_coefficients)
from .config import (ConfigError, RunConfig, load_config, parse_level_pairs, parse_levels,
                     trap_from_config, transition_from_config)
from .constants import CONST

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    return path


class Context:
    def __init__(self, cfg: RunConfig, out: Path, seed: int, coeff_file: str | None, dry_run: bool):
        self.cfg = cfg
        self.out = out
        self.seed = seed
        self.dry_run = dry_run
        try:
            self.table = load_coefficients(coeff_file or cfg.coeff_file)
        except OSError as exc:
            raise ConfigError(f"[coefficients] file: {exc}") from None
        self.written: list[Path] = []

    def csv(self, name, header, rows):
        self.out.mkdir(parents=True, exist_ok=True)
        self.written.append(write_csv(self.out / name, header, rows))

    def text(self, name, lines):
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        path.write_text("\n".join(lines) + "\n")
        self.written.append(path)


# ---------------------------------------------------------------- levels

def cmd_levels(ctx: Context) -> list[str]:
    from .spin import UnsupportedLevelError, build_diagonal_terms, expansion_energy, para_levels

    cfg = ctx.cfg
    levels = parse_levels(cfg.get("levels", "levels", "0,2"), "[levels] levels")
    fields = cfg.floats("levels", "B", [4.0])
    tol = cfg.float("levels", "tolerance", 50.0)
    if not levels or not fields:
        raise ConfigError("[levels]: no levels or fields given")
    for key in levels:
        c = ctx.table[key]
        if c.N != 2:
            raise ConfigError(f"[levels] levels: level {key} is not N = 2; the expansion covers N = 2 only")
    if ctx.dry_run:
        return []
    rows = []
    worst = 0.0
    for key in levels:
        c = ctx.table[key]
        for B in fields:
            diag = build_diagonal_terms(c, B)
            for lv in para_levels(c, B, diag):
                group = "lower" if lv.label.M_s < 0 else "higher"
                try:
                    e2 = expansion_energy(c, B, diag, lv.M_F, group)
                except (UnsupportedLevelError, ValueError):
                    e2 = math.nan
                diff = lv.energy - e2
                worst = max(worst, abs(diff))
                rows.append((key[0], key[1], B, str(lv.M_F), group, lv.label.M_N, lv.energy, e2, diff,
                             abs(diff) < tol))
    ctx.csv("levels.csv", ["v", "N", "B_T", "M_F", "group", "M_N", "E_exact_Hz", "E_table2_Hz",
                           "difference_Hz", "reliable"], rows)
    flagged = sum(1 for r in rows if not r[-1])
    return [f"{len(rows)} states, max |exact - expansion| = {worst:.3g} Hz, "
            f"{flagged} flagged beyond {tol:g} Hz"]


# ---------------------------------------------------------------- sensitivity

def cmd_sensitivity(ctx: Context) -> list[str]:
    from .systematics import TransitionSpec, sensitivity_beta, sensitivity_scan, sensitivity_components, \
        total_magnetic_shift

    cfg = ctx.cfg
    raw = cfg.get("sensitivity", "transitions", "0,0->2,2; 0,2->2,2")
    pairs = parse_level_pairs(raw, "[sensitivity] transitions")
    if not pairs:
        raise ConfigError("[sensitivity] transitions: empty transition list")
    B0 = cfg.float("sensitivity", "B0", 4.0)
    lo, hi = cfg.float("sensitivity", "scan_min", 1.0), cfg.float("sensitivity", "scan_max", 7.0)
    steps = cfg.int("sensitivity", "scan_steps", 121)
    which = cfg.get("sensitivity", "scan_components", "mn0")
    if which not in ("mn0", "all", "none"):
        raise ConfigError("[sensitivity] scan_components: must be mn0, all or none")
    if not (0.1 <= lo <= hi <= 10.0) or steps < 1:
        raise ConfigError("[sensitivity] scan range must lie within [0.1, 10] T with scan_steps >= 1")
    for a, b in pairs:
        ctx.table[a], ctx.table[b]
    if ctx.dry_run:
        return []
    rows = []
    for a, b in pairs:
        for spec in sensitivity_components(a, b):
            beta = sensitivity_beta(spec, ctx.table, B0)
            df = total_magnetic_shift(spec, ctx.table, B0)
            rows.append((f"{a[0]},{a[1]}", f"{b[0]},{b[1]}", str(spec.lower.M_s), spec.lower.M_N,
                         spec.upper.M_N, beta / 1e3, df / 1e3))
    ctx.csv("table4.csv", ["lower", "upper", "M_s", "M_N", "M_N2", "beta_kHz_per_T",
                           "delta_f_mag_kHz"], rows)
    lines = [f"{len(rows)} spin components at B0 = {B0:g} T"]
    if which == "none":
        return lines
    scan_rows, zero_rows = [], []
    for a, b in pairs:
        specs = sensitivity_components(a, b)
        if which == "mn0":
            specs = [s for s in specs if s.lower.M_N == 0 and s.upper.M_N == 0]
        for spec in specs:
            label = str(spec)
            grid, crossings = sensitivity_scan(spec, ctx.table, (lo, hi), steps)
            scan_rows.extend((label, B, df, beta) for B, df, beta in grid)
            zero_rows.extend((label, B) for B in crossings)
    ctx.csv("fig2_scan.csv", ["component", "B_T", "delta_f_mag_Hz", "beta_Hz_per_T"], scan_rows)
    ctx.csv("insensitive_fields.csv", ["component", "B_T"], zero_rows)
    lines.append(f"{len(zero_rows)} field-insensitive points in [{lo:g}, {hi:g}] T")
    lines.extend(f"  beta = 0 at {B:.4f} T for {label}" for label, B in zero_rows)
    return lines


# ---------------------------------------------------------------- budget

def cmd_budget(ctx: Context) -> list[str]:
    from .systematics import BUDGET_ITEMS, cpt_difference_budget, shift_budget

    cfg = ctx.cfg
    spec = transition_from_config(cfg)
    trap = trap_from_config(cfg)
    if not math.isfinite(spec.f0):
        raise ConfigError("[transition] f0: required for the budget")
    items = tuple(x.strip() for x in cfg.get("budget", "items", ",".join(BUDGET_ITEMS)).split(",") if x.strip())
    unknown = set(items) - set(BUDGET_ITEMS)
    if unknown:
        raise ConfigError(f"[budget] items: unknown {sorted(unknown)}")
    intensity = cfg.float("budget", "intensity", 0.0)
    if ctx.dry_run:
        return []
    b = shift_budget(spec, ctx.table, trap, intensity, items)
    ctx.csv("budget.csv", ["item", "shift_Hz", "fractional", "note"], b.rows())
    d = cpt_difference_budget(spec, ctx.table, trap, intensity, items)
    ctx.csv("cpt_difference.csv", ["item", "difference_Hz", "fractional", "note"], d.rows())
    return [f"{spec}: total shift {b.total:.6g} Hz ({b.total / spec.f0:.3g} fractional)",
            f"matter - antimatter difference {d.total:.3g} Hz"]


# ---------------------------------------------------------------- rabi

def _geometry(cfg: RunConfig):
    from .e2 import Geometry

    deg = math.pi / 180
    return Geometry(cfg.float("geometry", "xi_deg", 45.0) * deg, cfg.float("geometry", "gamma_deg", 0.0) * deg,
                    cfg.float("geometry", "theta_deg", 0.0) * deg, cfg.float("geometry", "phi_deg", 0.0) * deg)


def cmd_rabi(ctx: Context) -> list[str]:
    from .e2 import ForbiddenTransitionError, load_e2_table, rabi_frequency, required_intensity
    from .systematics import TransitionSpec

    cfg = ctx.cfg
    spec = transition_from_config(cfg)
    g = _geometry(cfg)
    intensity = cfg.float("rabi", "intensity", 1.0)
    target = cfg.opt_float("rabi", "target")
    e2 = load_e2_table()
    key = (spec.lower.v, spec.lower.N, spec.upper.v, spec.upper.N)
    if key not in e2:
        raise ConfigError(f"[transition]: no quadrupole data for {key}")
    if ctx.dry_run:
        return []
    rows = []
    lines = []
    try:
        r = rabi_frequency(spec, e2, intensity, g)
    except ForbiddenTransitionError as exc:
        raise ConfigError(f"[transition]: {exc}") from None
    per = r.omega_rabi / math.sqrt(intensity) if intensity > 0 else math.nan
    rows += [("omega_rabi_rad_per_s", r.omega_rabi), ("per_sqrt_intensity", per), ("q", r.q),
             ("clebsch_gordan", r.cg), ("tensor_factor", r.tensor_factor), ("F_if", r.F_if)]
    lines.append(f"{spec}: Omega = {r.omega_rabi:.4g} rad/s at I = {intensity:g} W/m^2 "
                 f"({per:.4g} sqrt(I) rad/s)")
    if target is not None:
        req = required_intensity(spec, e2, target, g)
        rows.append(("required_intensity_W_per_m2", req))
        lines.append(f"required intensity for Omega = {target:g} rad/s: {req:.4g} W/m^2")
    # sqrt(I)-normalized rates of all M_N -> M_N components with the same M_s
    N = min(spec.lower.N, spec.upper.N)
    for mn in range(-N, N + 1):
        comp = TransitionSpec(SpinState(spec.lower.v, spec.lower.N, spec.lower.M_s, mn, 0, spec.species),
                              SpinState(spec.upper.v, spec.upper.N, spec.upper.M_s, mn, 0, spec.species))
        rate = rabi_frequency(comp, e2, 1.0, g).omega_rabi
        rows.append((f"per_sqrt_intensity_M_N={mn}", rate))
        lines.append(f"  M_N = M_N' = {mn:+d}: {rate:.4g} sqrt(I) rad/s")
    ctx.csv("rabi.csv", ["quantity", "value"], rows)
    return lines


# ---------------------------------------------------------------- lineshape

def cmd_lineshape(ctx: Context) -> list[str]:
    from .lineshape import (fit_line_center, line_profile, qds_scale_from_temperature,
                            synthetic_samples)

    cfg = ctx.cfg
    cfg.block("lineshape")
    delta = cfg.float("lineshape", "delta_int", 0.12)
    sigma = cfg.opt_float("lineshape", "qds_scale")
    if sigma is None:
        T_z = cfg.float("lineshape", "T_z")
        f0 = cfg.float("lineshape", "f0")
        sigma = qds_scale_from_temperature(CONST.mass_H2plus, T_z, f0)
    mults = cfg.floats("lineshape", "multipliers", [1, 10, 50])
    # wide enough that the Lorentzian tails of the broadest profile lose < 1%
    lo = cfg.float("lineshape", "grid_min", -10 * sigma - 100 * delta * max(mults))
    hi = cfg.float("lineshape", "grid_max", 100 * delta * max(mults))
    n = cfg.int("lineshape", "grid_points", int(math.ceil((hi - lo) / (0.2 * delta * min(mults)))) + 1)
    offset = cfg.float("lineshape", "radial_offset", 0.0)
    if delta <= 0 or sigma < 0 or n < 2 or not hi > lo:
        raise ConfigError("[lineshape]: need delta_int > 0, qds_scale >= 0 and a valid grid")
    if ctx.dry_run:
        return []
    grid = np.linspace(lo, hi, n)
    profiles = [line_profile(m * delta, sigma, grid, offset) for m in mults]
    rows = zip(grid, *(p.amplitude for p in profiles))
    ctx.csv("lineshape.csv", ["detuning_Hz"] + [f"density_x{m:g}" for m in mults], rows)
    lines = [f"qds_scale = {sigma:.4g} Hz"]
    for m, p in zip(mults, profiles):
        flag = " (coarse grid)" if p.coarse_grid else ""
        lines.append(f"  delta_int x{m:g}: peak at {p.peak():.4g} Hz, integral {p.integral():.4f}{flag}")
    noise = cfg.opt_float("lineshape", "fit_noise")
    if noise is not None:
        rng = np.random.default_rng(ctx.seed)
        npts = cfg.int("lineshape", "fit_points", 80)
        det = np.concatenate([np.linspace(-5 * sigma - 10 * delta, -2 * delta, npts // 2),
                              np.linspace(-2 * delta, 5 * delta, npts - npts // 2)])
        smp = synthetic_samples(0.0, delta, sigma, det, noise, rng)
        fit = fit_line_center(smp, {"f0": 0.5 * delta, "qds_scale": max(sigma, delta),
                                    "delta_int": 1.5 * delta})
        report = [f"f0 = {fit.f0!r} +- {fit.errors['f0']!r} Hz",
                  f"qds_scale = {fit.qds_scale!r} +- {fit.errors['qds_scale']!r} Hz",
                  f"delta_int = {fit.delta_int!r} +- {fit.errors['delta_int']!r} Hz",
                  f"amplitude = {fit.amplitude!r} +- {fit.errors['amplitude']!r}",
                  f"residual = {fit.residual!r}", f"evaluations = {fit.n_iter}"]
        ctx.text("fit_report.txt", report)
        lines.append(f"fit on synthetic data: f0 = {fit.f0:.4g} +- {fit.errors['f0']:.2g} Hz")
    return lines


# ---------------------------------------------------------------- cooling

def _cooling_config(cfg: RunConfig):
    from .cooling import CoolingConfig, SweepProtocol

    b = "cooling"
    sweep = SweepProtocol(cfg.float(b, "f_start", 270e3), cfg.float(b, "f_end", 300e3),
                          cfg.float(b, "duration", 1.5), cfg.int(b, "n_steps", 30))
    polarity = cfg.get(b, "polarity", "matter")
    if polarity not in ("matter", "antimatter"):
        raise ConfigError("[cooling] polarity: must be matter or antimatter")
    c = CoolingConfig(polarity=polarity, s0=cfg.float(b, "s0", 0.7e-3), nu_b=cfg.float(b, "nu_b", 300e3),
                      ell_b=cfg.float(b, "ell_b", 300e-6), sweep=sweep, hold=cfg.float(b, "hold", 0.0),
                      dt=cfg.float(b, "dt", 50e-9))
    c.well()
    return c


def cmd_cooling(ctx: Context) -> list[str]:
    from .cooling import CoolingError, cooling_map, ensemble_cooling_fraction, integrate, \
        ParticleState, simulate_cooling_batch, _start_positions, _schedule

    cfg = ctx.cfg
    cfg.block("cooling")
    try:
        config = _cooling_config(cfg)
    except CoolingError as exc:
        raise ConfigError(f"[cooling]: {exc}") from None
    energies = cfg.floats("cooling", "energies", [])
    threshold = cfg.float("cooling", "threshold", 1.0)
    ens_n = cfg.int("cooling", "ensemble_n", 0)
    ens_T = cfg.float("cooling", "ensemble_T", 4.0)
    map_e = cfg.floats("cooling", "map_energies", [])
    map_nu = cfg.floats("cooling", "map_nu", [])
    if ctx.dry_run:
        return []
    kB = CONST.boltzmann
    lines = [f"{config.polarity} pair, s0 = {config.s0:g} m, sweep {config.sweep.f_start:g} -> "
             f"{config.sweep.f_end:g} Hz in {config.sweep.duration:g} s"]
    if energies:
        final = simulate_cooling_batch(np.array(energies) * kB, config)
        ctx.csv("cooling_runs.csv", ["E_init_K", "E_final_K", "success"],
                ((e, f / kB, f / kB < threshold) for e, f in zip(energies, final)))
        lines += [f"  {e:g} K -> {f / kB:.4g} K" for e, f in zip(energies, final)]
        well = config.well()
        tn, kn = _schedule(well, config.sweep, config.hold)
        za, va, zb, vb = _start_positions(well, kn[0], np.array([energies[0] * kB]), np.zeros(1),
                                          np.zeros(1), np.zeros(1))
        pair = (ParticleState(well.mass_a, well.charge_a, float(za[0]), float(va[0])),
                ParticleState(well.mass_b, well.charge_b, float(zb[0]), float(vb[0])))
        traj = integrate(pair, well, config.dt, config.sweep.duration + config.hold, config.sweep,
                         stride=20011, hold=config.hold)
        ctx.csv("trajectory.csv", ["t_s", "z_a_m", "v_a_m_per_s", "E_a_J", "z_b_m", "v_b_m_per_s", "E_b_J"],
                traj.rows())
    if ens_n:
        r = ensemble_cooling_fraction(ens_T, config, ens_n, threshold * kB, ctx.seed)
        ctx.csv("cooling_ensemble.csv", ["index", "E_init_K", "E_final_K", "success"],
                ((i, a / kB, b / kB, b / kB < threshold) for i, (a, b) in enumerate(zip(r.initial, r.final))))
        lines.append(f"ensemble T = {ens_T:g} K, n = {ens_n}, seed {ctx.seed}: "
                     f"fraction below {threshold:g} K = {r.fraction:.4f}")
    if map_e and map_nu:
        m = cooling_map(map_e, map_nu, config.s0, cfg.float("cooling", "map_threshold", 1e-3),
                        config.polarity, config.dt)
        ctx.csv("cooling_map.csv", ["E_init_K", "nu_z_Hz", "success", "E_final_K"], m.rows())
        lines.append(f"map boundary slope {m.slope_mK_per_kHz:.4g} mK/kHz")
    return lines


# ---------------------------------------------------------------- bottle

def cmd_bottle(ctx: Context) -> list[str]:
    from dataclasses import replace

    from .bottle import BottleField, axial_period_averaged_shift, cancellation_report

    cfg = ctx.cfg
    spec = transition_from_config(cfg)
    trap = trap_from_config(cfg)
    if not math.isfinite(spec.f0):
        raise ConfigError("[transition] f0: required for the bottle report")
    nu_z = cfg.float("bottle", "nu_z", trap.nu_z)
    if not nu_z > 0:
        raise ConfigError("[bottle] nu_z: must be positive (or set [trap] nu_z)")
    cap = cfg.float("bottle", "cap", 250e3)
    beta = cfg.opt_float("bottle", "beta")
    amps = cfg.floats("bottle", "amplitudes", [1e-6, 10e-6, 100e-6])
    if ctx.dry_run:
        return []
    trap = replace(trap, nu_z=nu_z)
    rep = cancellation_report(spec, ctx.table, trap, cap, beta)
    rows = list(rep.rows())
    if math.isfinite(rep.magic_B2):
        bottle = BottleField(trap.B0, rep.magic_B2)
        for a in amps:
            rows.append((f"averaged_shift_A={a!r}", axial_period_averaged_shift(bottle, rep.beta, spec.f0, nu_z, a)))
            rows.append((f"averaged_shift_no_bottle_A={a!r}",
                         axial_period_averaged_shift(BottleField(trap.B0), rep.beta, spec.f0, nu_z, a)))
    ctx.csv("bottle.csv", ["quantity", "value"], rows)
    return [f"beta = {rep.beta:.4g} Hz/T, magic B2 = {rep.magic_B2 / 1e3:.4g} kT/m^2 "
            f"({'feasible' if rep.feasible else 'not feasible'} under {cap / 1e3:g} kT/m^2), "
            f"max nu_z = {rep.max_nu_z / 1e6:.4g} MHz"] + [f"  {n}" for n in rep.notes]


COMMANDS = {
    "levels": cmd_levels,
    "sensitivity": cmd_sensitivity,
    "budget": cmd_budget,
    "rabi": cmd_rabi,
    "lineshape": cmd_lineshape,
    "cooling": cmd_cooling,
    "bottle": cmd_bottle,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="h2ion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="run configuration file")
    common.add_argument("--out", default=None, help="output directory (default: [run] out or ./out)")
    common.add_argument("--seed", type=int, default=None, help="random seed (overrides [run] seed)")
    common.add_argument("--dry-run", action="store_true", help="validate the configuration only")
    common.add_argument("--coeff-file", default=None, help="override [coefficients] file")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__name__.replace("cmd_", "") + " report")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config)
        seed = args.seed if args.seed is not None else cfg.seed
        if seed < 0 or seed >= 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        out = Path(args.out or cfg.get("run", "out", "out"))
        ctx = Context(cfg, out, seed, args.coeff_file, args.dry_run)
        lines = COMMANDS[args.command](ctx)
    except (ConfigError, CoefficientError, MissingCoefficientError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"h2ion {args.command}: configuration error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # computation failure
        print(f"h2ion {args.command}: failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.dry_run:
        print(f"h2ion {args.command}: configuration {args.config} is valid")
        return EXIT_OK
    for line in lines:
        print(line)
    for path in ctx.written:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
