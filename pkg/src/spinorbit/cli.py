"""Command-line interface.

Subcommands: correlations, sweep, scatter, profile, tomography.  Single
reports go to stdout as JSON; sweeps and scatters are CSV files with a
matplotlib rendering written alongside; every file-producing run also gets
a JSON manifest sufficient to replay it.

Exit codes: 0 success, 2 bad arguments, 3 degenerate state.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

import numpy as np

from . import __version__, circuitfile, correlations, optics, profile, sweeps, tomography

SEED_ENV_VAR = "SPINORBIT_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class UsageError(Exception):
    pass


def _default_seed():
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


def _add_state_args(p):
    p.add_argument("--family", choices=["rank2", "rank3", "mdms"],
                   help="analytic state family")
    p.add_argument("--p", type=float, default=0.5, help="Bell imbalance")
    p.add_argument("--m", type=float, default=0.5, help="product-mix weight")
    p.add_argument("--eps", type=float, default=0.5, help="coherent-part weight")
    p.add_argument("--circuit", help="path to a .circuit file")


def _add_optimizer_args(p):
    p.add_argument("--grid-theta", type=int, default=64)
    p.add_argument("--grid-phi", type=int, default=64)
    p.add_argument("--no-refine", action="store_true",
                   help="skip the simplex refinement stage")


def _optimizer_config(args):
    return correlations.OptimizerConfig(
        grid_theta=args.grid_theta, grid_phi=args.grid_phi,
        refine=not args.no_refine)


def _resolve_state(args):
    has_family = args.family is not None
    has_circuit = args.circuit is not None
    if has_family == has_circuit:
        raise UsageError("give exactly one of --family or --circuit")
    if has_family:
        return sweeps.family_state(args.family, p=args.p, m=args.m, epsilon=args.eps)
    with open(args.circuit, encoding="utf-8") as fh:
        circuit = circuitfile.parse_circuit(fh.read())
    return optics.ensemble_density(optics.run_circuit(circuit))


def _write_manifest(command, args, outputs, seed, started):
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = {
        "command": command,
        "parameters": params,
        "seed": seed,
        "version": __version__,
        "outputs": [str(o) for o in outputs],
        "duration_s": round(time.monotonic() - started, 3),
    }
    path = outputs[0] + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, default=str)
        fh.write("\n")
    return path


def cmd_correlations(args):
    started = time.monotonic()
    rho = _resolve_state(args)
    rep = correlations.correlation_report(rho, _optimizer_config(args))
    payload = json.dumps(rep.as_dict(), indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        _write_manifest("correlations", args, [args.output], None, started)
    print(payload)
    return EXIT_OK


def cmd_sweep(args):
    started = time.monotonic()
    noise = None
    seed = None
    if args.noise:
        seed = args.seed if args.seed is not None else _default_seed()
        noise = tomography.NoiseConfig(
            hwp_jitter_deg=args.hwp_jitter, bs_r=args.bs_r, bs_t=args.bs_t,
            runs=args.runs, seed=seed)
    rows = sweeps.sweep(
        args.family, var=args.var, start=args.start, stop=args.stop,
        step=args.step, p=args.p, m=args.m, epsilon=args.eps,
        noise=noise, config=_optimizer_config(args))
    var_col = "eps" if args.var == "epsilon" else args.var
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([var_col, *sweeps.SWEEP_COLUMNS])
        for v, row in rows:
            writer.writerow([f"{v:.6f}", *(f"{row[c]:.9f}" for c in sweeps.SWEEP_COLUMNS)])
    outputs = [args.output]
    if not args.no_figure:
        fig_path = os.path.splitext(args.output)[0] + ".png"
        from . import plotting
        plotting.render_sweep(rows, var_col, fig_path,
                              title=f"{args.family} correlations vs {var_col}")
        outputs.append(fig_path)
    _write_manifest("sweep", args, outputs, seed, started)
    return EXIT_OK


def cmd_scatter(args):
    started = time.monotonic()
    samples = sweeps.scatter(step=args.step, config=_optimizer_config(args))
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["family", "param", "eps", "C", "Q"])
        for fam, param, eps, c, q in samples:
            writer.writerow([fam, f"{param:.6f}", f"{eps:.6f}", f"{c:.9f}", f"{q:.9f}"])
    outputs = [args.output]
    if not args.no_figure:
        fig_path = os.path.splitext(args.output)[0] + ".png"
        from . import plotting
        plotting.render_scatter(samples, fig_path, title="discord vs classical correlation")
        outputs.append(fig_path)
    _write_manifest("scatter", args, outputs, None, started)
    return EXIT_OK


def cmd_profile(args):
    started = time.monotonic()
    rho = _resolve_state(args)
    grid = profile.GridConfig(half_width=args.half_width,
                              samples_per_axis=args.samples, waist=args.waist)
    imap = profile.intensity_map(rho, grid)
    if args.format == "pgm":
        profile.write_pgm(imap, args.output)
    else:
        profile.write_csv(imap, args.output)
    outputs = [args.output]
    if not args.no_figure:
        fig_path = os.path.splitext(args.output)[0] + ".png"
        from . import plotting
        plotting.render_profile(imap, fig_path, title="transverse detection density")
        outputs.append(fig_path)
    _write_manifest("profile", args, outputs, None, started)
    return EXIT_OK


def cmd_tomography(args):
    started = time.monotonic()
    rho_true = _resolve_state(args)
    seed = args.seed if args.seed is not None else _default_seed()
    noise = tomography.NoiseConfig(
        hwp_jitter_deg=args.hwp_jitter, bs_r=args.bs_r, bs_t=args.bs_t,
        runs=args.runs, seed=seed)
    from . import qmath
    rho_rec = tomography.perturb_and_measure(rho_true, noise, 0)
    stats = tomography.monte_carlo_correlations(rho_true, noise, _optimizer_config(args))
    payload = json.dumps({
        "reconstructed_real": np.real(rho_rec).round(12).tolist(),
        "reconstructed_imag": np.imag(rho_rec).round(12).tolist(),
        "fidelity": round(qmath.fidelity(rho_true, rho_rec), 12),
        "stats": {"mean": {k: round(v, 9) for k, v in stats.mean.items()},
                  "std": {k: round(v, 9) for k, v in stats.std.items()},
                  "raw": {k: [round(x, 9) for x in v] for k, v in stats.raw.items()}},
        "runs": noise.runs,
        "seed": seed,
    }, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        _write_manifest("tomography", args, [args.output], seed, started)
    print(payload)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinorbit",
        description="Spin-orbit two-qubit circuit simulation and correlation analysis")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlations", help="correlation report for one state")
    _add_state_args(p)
    _add_optimizer_args(p)
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("sweep", help="correlation curves along one parameter")
    p.add_argument("--family", choices=["rank2", "rank3", "mdms"], required=True)
    p.add_argument("--var", choices=["epsilon", "p", "m"], default="epsilon")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--m", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--noise", action="store_true", help="add tomography-noise error bars")
    p.add_argument("--hwp-jitter", type=float, default=1.0, help="degrees, uniform half-range")
    p.add_argument("--bs-r", type=float, default=0.48)
    p.add_argument("--bs-t", type=float, default=0.49)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    _add_optimizer_args(p)
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scatter", help="discord vs classical correlation samples")
    p.add_argument("--step", type=float, default=0.01)
    _add_optimizer_args(p)
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("profile", help="transverse detection-density map")
    _add_state_args(p)
    p.add_argument("--half-width", type=float, default=4.0)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--waist", type=float, default=1.0)
    p.add_argument("--format", choices=["pgm", "csv"], default="pgm")
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("tomography", help="noisy tomography Monte Carlo")
    _add_state_args(p)
    p.add_argument("--hwp-jitter", type=float, default=1.0)
    p.add_argument("--bs-r", type=float, default=0.48)
    p.add_argument("--bs-t", type=float, default=0.49)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    _add_optimizer_args(p)
    p.add_argument("-o", "--output", help="JSON output path")
    p.set_defaults(func=cmd_tomography)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, FileNotFoundError, circuitfile.CircuitParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except optics.DegenerateStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
