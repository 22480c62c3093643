"""Command-line front end.

One subcommand per reference table: the level table (eigen), the
resonance scan (fig1), the gradient-vs-time curves (fig2), wall escape
probabilities (fig4), corner losses vs fall time (fig5), the full loss
budget (fig6) and the Earth-rotation report (earth).  Each command
reads one JSON config (defaults if omitted), writes CSV and/or JSON
plus a sidecar echoing the effective config, and prints a short
summary.

Exit codes: 0 success, 2 configuration error, 3 numerical failure;
errors print one machine-parseable line to stderr.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import budget as budget_mod
from . import losses, noninertial, transitions
from .config import ConfigError, load_config, validate_config
from .constants import joules_to_pev
from .eigenstates import EigenstateTable
from .emit import emit_table
from .quadrature import ConvergenceError


def _parse_levels(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a range like 1..30")
    return lo, hi


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qbounce",
        description="Bound quantum states of ultracold neutrons: spectra, "
                    "resonant transitions, and trap loss budgets.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="JSON config file (defaults apply if omitted)")
    common.add_argument("--out", metavar="DIR",
                        help="output directory (overrides config)")
    common.add_argument("--format", choices=("csv", "json", "both"),
                        help="table format (overrides config)")
    common.add_argument("--levels", type=_parse_levels, metavar="A..B",
                        help="level range (overrides config)")
    common.add_argument("--velocity", type=float, metavar="M_PER_S",
                        help="horizontal velocity (overrides config)")
    common.add_argument("--alpha", type=float, nargs="+", metavar="RAD",
                        help="wall angle list (overrides config)")
    common.add_argument("--freq-max", type=float, metavar="HZ",
                        help="scan frequency ceiling (overrides config)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eigen", parents=[common],
                   help="level energies, mean heights and turning points")
    sub.add_parser("fig1", parents=[common],
                   help="maximum transition probability vs drive frequency")
    sub.add_parser("fig2", parents=[common],
                   help="gradient needed for full transfer vs pulse time")
    sub.add_parser("fig4", parents=[common],
                   help="wall escape probability vs level, per wall angle")
    sub.add_parser("fig5", parents=[common],
                   help="corner loss probability vs free-fall time")
    sub.add_parser("fig6", parents=[common],
                   help="per-level loss budget with reference thresholds")
    sub.add_parser("earth", parents=[common],
                   help="Earth-rotation energy shifts and level blur")
    psd = sub.add_parser("psd", parents=[common],
                         help="roughness spectrum: model curve and, "
                              "optionally, the periodogram of a measured "
                              "profile")
    psd.add_argument("--profile", metavar="PATH",
                     help="measured profile (.txt/.dat/.csv two-column text, "
                          "otherwise binary)")
    psd.add_argument("--k-min", type=float, default=1e2, metavar="INV_M",
                     help="lowest wavenumber (default 1e2 /m)")
    psd.add_argument("--k-max", type=float, default=1e6, metavar="INV_M",
                     help="highest wavenumber (default 1e6 /m)")
    psd.add_argument("--k-points", type=int, default=200,
                     help="log-spaced grid size (default 200)")
    return parser


def _apply_overrides(cfg, args):
    raw = cfg.to_dict()
    if args.out:
        raw["output"]["directory"] = args.out
    if args.format:
        raw["output"]["format"] = args.format
    if args.levels:
        raw["levels"] = {"min": args.levels[0], "max": args.levels[1]}
    if args.velocity is not None:
        raw["geometry"]["velocity"] = args.velocity
        raw["rotation"]["v_ns"] = args.velocity
    if args.alpha is not None:
        raw["alpha_list"] = list(args.alpha)
    if args.freq_max is not None:
        raw["scan"]["freq_max_hz"] = args.freq_max
    return validate_config(raw)


# ---------------------------------------------------------------------------
# commands

def cmd_eigen(cfg, table, out_dir):
    header = ["level", "lambda", "energy_j", "energy_pev", "frequency_hz",
              "mean_height_m", "mean_height_um", "turning_point_m",
              "turning_point_um"]
    rows = []
    for n in cfg.levels:
        mh = table.mean_height(n)
        rows.append([n, table.lam(n), table.energy(n), table.energy_pev(n),
                     table.frequency_hz(n), mh.mean, mh.mean * 1e6,
                     mh.turning_point, mh.turning_point * 1e6])
    files = emit_table(out_dir, "eigen", header, rows, cfg.output.format,
                       cfg.to_dict(), {"table": "eigenstate ladder"})
    mh1 = table.mean_height(1)
    print(f"eigen: levels {cfg.level_min}..{cfg.level_max}; "
          f"level-1 turning point {mh1.turning_point * 1e6:.2f} um, "
          f"E1 = {table.energy_pev(1):.4f} peV")
    return files


def cmd_fig1(cfg, table, out_dir):
    rabi_omega = math.pi / cfg.scan.rabi_pulse_s
    step = cfg.scan.freq_step_hz
    freqs = np.arange(step, cfg.scan.freq_max_hz + 0.5 * step, step)
    files = []
    for n0 in cfg.scan.initial_levels:
        scan = transitions.resonance_scan(table, n0, freqs, rabi_omega)
        header = (["frequency_hz"]
                  + [f"p_max_to_{n}" for n in scan.final_levels]
                  + ["p_max_envelope"])
        rows = [[f, *probs, env] for f, probs, env in
                zip(scan.frequencies_hz, scan.probabilities.tolist(),
                    scan.envelope)]
        files += emit_table(
            out_dir, f"fig1_level{n0}", header, rows, cfg.output.format,
            cfg.to_dict(),
            {"table": "resonance scan (envelope probability)",
             "initial_level": n0, "rabi_omega_rad_per_s": rabi_omega,
             "final_levels": list(scan.final_levels)})
        peaks = ", ".join(
            f"{n}:{table.transition_frequency_hz(n0, n):.1f}Hz"
            for n in scan.final_levels)
        print(f"fig1: initial level {n0}, resonances at {peaks}")
    return files


def cmd_fig2(cfg, table, out_dir):
    gt = cfg.gradient_times
    times = np.geomspace(gt.min_s, gt.max_s, gt.points)
    markers = {
        budget_mod.PULSE_RESOLVE_TIME: "resolve_time",
        transitions.FLOW_THROUGH_TIME: "flow_through",
        cfg.constants.beta_lifetime: "beta_lifetime",
    }
    grid = sorted(set(times.tolist()) | set(markers))
    header = (["time_s"]
              + [f"gradient_t_per_m_{a}_to_{b}" for a, b in gt.transitions]
              + ["marker"])
    rows = []
    for t in grid:
        row = [t]
        for a, b in gt.transitions:
            row.append(transitions.required_gradient(table, a, b, t))
        row.append(markers.get(t, ""))
        rows.append(row)
    files = emit_table(out_dir, "fig2", header, rows, cfg.output.format,
                       cfg.to_dict(),
                       {"table": "gradient for full transfer at resonance",
                        "marker_times_s": sorted(markers)})
    for a, b in gt.transitions:
        g10 = transitions.required_gradient(table, a, b, 10.0)
        print(f"fig2: {a}->{b} needs {g10:.4g} T/m at 10 s")
    return files


def cmd_fig4(cfg, table, out_dir):
    header = ["level"] + [f"p_escape_alpha_{a:.0e}" for a in cfg.alpha_list]
    rows = []
    for n in cfg.levels:
        row = [n]
        for a in cfg.alpha_list:
            row.append(losses.wall_escape_probability(
                table, n, cfg.geometry.velocity, a))
        rows.append(row)
    files = emit_table(out_dir, "fig4", header, rows, cfg.output.format,
                       cfg.to_dict(),
                       {"table": "wall escape probability per collision",
                        "alpha_list_rad": list(cfg.alpha_list),
                        "velocity_m_per_s": cfg.geometry.velocity})
    print(f"fig4: levels {cfg.level_min}..{cfg.level_max}, "
          f"alpha in {list(cfg.alpha_list)}")
    return files


def cmd_fig5(cfg, table, out_dir):
    ft = cfg.fall_times
    times = np.geomspace(ft.min_s, ft.max_s, ft.points)
    levels = range(1, ft.max_level + 1)
    curves = {n: losses.corner_loss_curve(table, n, times) for n in levels}
    header = ["time_s"] + [f"p_loss_level_{n}" for n in levels]
    rows = [[t] + [curves[n][i] for n in levels]
            for i, t in enumerate(times)]
    t_ref = cfg.geometry.effective_hole / cfg.geometry.velocity
    p_ref = losses.corner_loss_probability(table, 1, t_ref)
    files = emit_table(out_dir, "fig5", header, rows, cfg.output.format,
                       cfg.to_dict(),
                       {"table": "corner loss probability vs free-fall time",
                        "default_fall_time_s": t_ref})
    print(f"fig5: levels 1..{ft.max_level}; "
          f"P(level 1, {t_ref * 1e6:.0f} us) = {p_ref:.3e}")
    return files


def cmd_fig6(cfg, table, out_dir):
    rows_data = budget_mod.assemble_budget(
        table, cfg.geometry, cfg.psd, rotation=cfg.rotation,
        levels=cfg.levels)
    header = ["level", "beta_rate", "wavy_rate", "wall_rate", "corner_rate",
              "total_rate", "resolve_threshold", "earth_blur_threshold",
              "storage_time_s"]
    rows = [[r.level, r.beta_rate, r.wavy_rate, r.wall_rate, r.corner_rate,
             r.total_rate, r.resolve_threshold, r.earth_blur_threshold,
             1.0 / r.total_rate] for r in rows_data]
    files = emit_table(
        out_dir, "fig6", header, rows, cfg.output.format, cfg.to_dict(),
        {"table": "per-level loss budget",
         "resolve_threshold_definition": budget_mod.RESOLVE_THRESHOLD_DEFINITION,
         "earth_blur_threshold_definition":
             budget_mod.EARTH_BLUR_THRESHOLD_DEFINITION,
         "channels": list(budget_mod.CHANNELS)})
    worst = max(rows_data, key=lambda r: r.total_rate)
    best = min(rows_data, key=lambda r: r.total_rate)
    print(f"fig6: storage time {1 / worst.total_rate:.1f}.."
          f"{1 / best.total_rate:.1f} s over levels "
          f"{cfg.level_min}..{cfg.level_max}")
    return files


def cmd_earth(cfg, table, out_dir):
    ctx = cfg.rotation
    header = ["quantity", "level", "v_ns_m_per_s", "value_j", "value_pev",
              "value_hz", "relative_to_level_energy", "note"]
    rows = []
    zero_ctx = noninertial.RotationContext(latitude_cos=ctx.latitude_cos,
                                           v_ns=0.0)
    shift0 = noninertial.rotation_energy_shift(table, 1, zero_ctx)
    rows.append(["rotation_shift", 1, 0.0, shift0, joules_to_pev(shift0),
                 "", shift0 / table.energy(1), "east-west reference"])
    speed = abs(ctx.v_ns)
    for n in cfg.levels:
        shift = noninertial.rotation_energy_shift(table, n, ctx)
        note = ""
        if n == 1:
            note = (f"historical estimate ~{noninertial.RELATIVE_SHIFT_REFERENCE:g}"
                    " relative; computed value is ~an order of magnitude larger"
                    " (documented discrepancy)")
        rows.append(["rotation_shift", n, ctx.v_ns, shift,
                     joules_to_pev(shift), "", shift / table.energy(n), note])
        cross = noninertial.rotation_energy_shift_effective_g(table, n, ctx)
        rows.append(["rotation_shift_effective_g", n, ctx.v_ns, cross,
                     joules_to_pev(cross), "", cross / table.energy(n),
                     "cross-check: g rescaling with E ~ g^(2/3)"])
        if speed > 0:
            blur = noninertial.rotation_frequency_blur(table, n, speed, ctx)
            rows.append(["rotation_blur", n, speed, "", "", blur, "",
                         "north-south vs east-west spread"])
    zeeman = noninertial.rotational_zeeman_shift(table.constants)
    rows.append(["rotational_zeeman_shift", "", "", zeeman,
                 joules_to_pev(zeeman), "", zeeman / table.energy(1),
                 f"reference value {noninertial.ZEEMAN_SHIFT_REFERENCE_PEV:g}"
                 " peV (rounded)"])
    files = emit_table(
        out_dir, "earth", header, rows, cfg.output.format, cfg.to_dict(),
        {"table": "Earth-rotation shifts and blur",
         "relative_shift_reference": noninertial.RELATIVE_SHIFT_REFERENCE,
         "zeeman_reference_pev": noninertial.ZEEMAN_SHIFT_REFERENCE_PEV})
    shift1 = noninertial.rotation_energy_shift(table, 1, ctx)
    print(f"earth: level-1 relative shift {shift1 / table.energy(1):.3e} "
          f"(reference ~1e-06); Zeeman {joules_to_pev(zeeman):.3e} peV")
    return files


def cmd_psd(cfg, table, out_dir, args):
    if not (0 < args.k_min < args.k_max) or args.k_points < 2:
        raise ConfigError("psd: need 0 < k-min < k-max and k-points >= 2")
    k = np.geomspace(args.k_min, args.k_max, args.k_points)
    header = ["wavenumber_inv_m", "psd_model_m3"]
    columns = [k, losses.psd_eval(cfg.psd, k)]
    metadata = {"table": "surface roughness spectrum",
                "model": {"amplitude_nm2_mm": cfg.psd.amplitude_nm2_mm,
                          "exponent": cfg.psd.exponent,
                          "k_ref_inv_m": cfg.psd.k_ref}}
    if args.profile:
        try:
            profile = losses.load_profile(args.profile)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"psd profile: {exc}") from exc
        header.append("psd_estimate_m3")
        columns.append(losses.psd_estimate(profile, k))
        metadata["profile"] = {"path": str(args.profile),
                               "samples": int(profile.samples.size),
                               "spacing_m": profile.spacing}
    rows = [list(row) for row in zip(*columns)]
    files = emit_table(out_dir, "psd", header, rows, cfg.output.format,
                       cfg.to_dict(), metadata)
    print(f"psd: {args.k_points} wavenumbers in "
          f"[{args.k_min:g}, {args.k_max:g}] /m"
          + (f", with estimate from {args.profile}" if args.profile else ""))
    return files


_COMMANDS = {
    "eigen": cmd_eigen,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "fig4": cmd_fig4,
    "fig5": cmd_fig5,
    "fig6": cmd_fig6,
    "earth": cmd_earth,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = _apply_overrides(cfg, args)
    except ConfigError as exc:
        print(f"error: code=2 kind=config reason={exc}", file=sys.stderr)
        return 2
    out_dir = Path(cfg.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = EigenstateTable(n_max=cfg.n_max, constants=cfg.constants)
    try:
        if args.command == "psd":
            files = cmd_psd(cfg, table, out_dir, args)
        else:
            files = _COMMANDS[args.command](cfg, table, out_dir)
    except ConfigError as exc:
        print(f"error: code=2 kind=config reason={exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"error: code=3 kind=numerical reason={exc}", file=sys.stderr)
        return 3
    for path in files:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
