"""Command-line entry point.

    chargedbec simulate  --config run.json   time series CSV + radiation JSON
    chargedbec sweep     --config sweep.json per-sigma CSV + fit JSON
    chargedbec benchmark [--config b.json]   harmonic closed-form comparison JSON
    chargedbec oracle    [--seed N]          Fock-space residual report JSON

Exit codes: 0 ok, 1 invalid input, 2 numerical blow-up, 3 ``--check`` failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, RunConfig, parse_config
from .experiments import run_harmonic_benchmark, run_scaling_sweep
from .fock import TruncationError, oracle_report
from .io import write_report, write_series_csv, write_sweep_csv
from .propagator import BlowUpError, evolve_and_record
from .radiation import classical_trajectory, integrate_radiation
from .state import make_gaussian_packet

OUTPUT_ENV = "CHARGEDBEC_OUTPUT_DIR"

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_CHECK = 0, 1, 2, 3

# --check thresholds
NORM_DRIFT_MAX = 1e-8
CS_SLACK = 1e-10
HARMONIC_REL_TOL = 3e-3
EHRENFEST_MAX = 1e-4
EXPONENT_TARGET, EXPONENT_TOL = -1.0, 0.1
INCOHERENT_SPREAD_MAX = 0.03
IMPULSE_SPREAD_MAX = 0.02
TWO_TERM_MAX = 1e-9
ALGEBRA_MAX = 1e-10


def _emit(level, kind, message, **extra):
    print(json.dumps({"level": level, "kind": kind, "message": message, **extra}),
          file=sys.stderr)


def run_simulation(cfg: RunConfig):
    p = cfg.packet
    psi0 = make_gaussian_packet(cfg.grid, float(p["center"]), float(p["sigma"]),
                                float(p["momentum"]), cfg.params.hbar)
    series = evolve_and_record(psi0, cfg.potential, cfg.params, cfg.evolution)
    classical = None
    if cfg.potential.kind != "tabulated":
        classical = classical_trajectory(float(p["center"]), float(p["momentum"]) / cfg.params.mass,
                                         cfg.potential, cfg.params, cfg.evolution)
    return series, integrate_radiation(series, cfg.params, classical=classical)


def _output_dir(args, cfg_output):
    d = args.output_dir or os.environ.get(OUTPUT_ENV) or cfg_output.get("directory", "output")
    path = Path(d)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load(args, experiment):
    text = Path(args.config).read_text() if args.config else "{}"
    doc = json.loads(text) if text.strip() else {}
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    doc.setdefault("experiment", experiment)
    if doc["experiment"] != experiment:
        raise ConfigError(f"config experiment {doc['experiment']!r} does not match "
                          f"subcommand {experiment!r}")
    return parse_config(doc)


def _cmd_simulate(args):
    cfg = _load(args, "simulate")
    series, rad = run_simulation(cfg)
    out = _output_dir(args, cfg.output)
    prefix = cfg.output["prefix"]
    write_series_csv(out / f"{prefix}_series.csv", series)
    norm_drift = float(abs(series.norm2 - series.norm2[0]).max())
    checks = {
        "norm_drift": {"value": norm_drift, "limit": NORM_DRIFT_MAX,
                       "pass": norm_drift < NORM_DRIFT_MAX},
        "cauchy_schwarz": {"value": series.cauchy_schwarz_violation(), "limit": CS_SLACK,
                           "pass": series.cauchy_schwarz_violation() <= CS_SLACK
                           and rad.i_hydro <= rad.i_incoherent + CS_SLACK},
    }
    body = {"radiation": rad.to_dict(), "n_samples": len(series), "norm_drift": norm_drift}
    write_report(out / f"{prefix}_radiation.json", "simulate", cfg.echo(), body, checks,
                 cfg.warnings)
    return checks


def _cmd_sweep(args):
    cfg = _load(args, "sweep")
    for w in cfg.warnings:
        _emit("warning", "regime", w)
    result = run_scaling_sweep(cfg.sweep, cfg.params)
    out = _output_dir(args, cfg.output)
    prefix = cfg.output["prefix"]
    write_sweep_csv(out / f"{prefix}_sweep.csv", result.records)
    record_warnings = [f"sigma={r.sigma:g}: {w}" for r in result.records for w in r.warnings]
    checks = {
        "exponent": {"value": result.exponent, "target": EXPONENT_TARGET, "tol": EXPONENT_TOL,
                     "pass": abs(result.exponent - EXPONENT_TARGET) <= EXPONENT_TOL},
        "incoherent_spread": {"value": result.incoherent_spread, "limit": INCOHERENT_SPREAD_MAX,
                              "pass": result.incoherent_spread < INCOHERENT_SPREAD_MAX},
        "impulse_spread": {"value": result.impulse_spread, "limit": IMPULSE_SPREAD_MAX,
                           "pass": result.impulse_spread < IMPULSE_SPREAD_MAX},
    }
    write_report(out / f"{prefix}_sweep.json", "sweep", cfg.echo(), result.to_dict(), checks,
                 cfg.warnings + record_warnings)
    return checks


def _cmd_benchmark(args):
    cfg = _load(args, "benchmark")
    b = cfg.benchmark
    report = run_harmonic_benchmark(cfg.params, omega=float(b["omega"]), x0=float(b["x0"]),
                                    periods=float(b["periods"]),
                                    steps_per_period=int(b["steps_per_period"]),
                                    sample_stride=int(b["sample_stride"]), dx=float(b["dx"]))
    checks = {
        "i_hydro": {"value": report["i_hydro_rel_error"], "limit": HARMONIC_REL_TOL,
                    "pass": report["i_hydro_rel_error"] < HARMONIC_REL_TOL},
        "i_incoherent": {"value": report["i_incoherent_rel_error"], "limit": HARMONIC_REL_TOL,
                         "pass": report["i_incoherent_rel_error"] < HARMONIC_REL_TOL},
        "norm_drift": {"value": report["norm_drift"], "limit": NORM_DRIFT_MAX,
                       "pass": report["norm_drift"] < NORM_DRIFT_MAX},
        "ehrenfest": {"value": report["ehrenfest_residual"], "limit": EHRENFEST_MAX,
                      "pass": report["ehrenfest_residual"] < EHRENFEST_MAX},
    }
    out = _output_dir(args, cfg.output)
    write_report(out / f"{cfg.output['prefix']}_benchmark.json", "benchmark", cfg.echo(),
                 report, checks, cfg.warnings)
    return checks


def _cmd_oracle(args):
    report = oracle_report(seed=args.seed, n_trials=args.trials, n_modes=args.modes,
                           n_max=args.n_max)
    limits = {"two_term_residual": TWO_TERM_MAX, "fock_two_term_residual": ALGEBRA_MAX,
              "ordering_residual": ALGEBRA_MAX, "eigenvalue_residual": ALGEBRA_MAX,
              "coherent_norm_error": ALGEBRA_MAX, "number_mean_error": ALGEBRA_MAX,
              "commutator_residual": ALGEBRA_MAX}
    checks = {k: {"value": report[k], "limit": v, "pass": report[k] < v}
              for k, v in limits.items()}
    settings = {"seed": args.seed, "trials": args.trials, "modes": args.modes,
                "n_max": args.n_max}
    out = _output_dir(args, {})
    doc = write_report(out / f"{args.prefix}_oracle.json", "oracle", settings, report, checks)
    print(json.dumps(doc, indent=2))
    return checks


def build_parser():
    parser = argparse.ArgumentParser(prog="chargedbec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required):
        p.add_argument("--config", required=config_required, help="JSON run configuration")
        p.add_argument("--output-dir", help=f"overrides ${OUTPUT_ENV} and the config")
        p.add_argument("--check", action="store_true",
                       help="exit 3 when an acceptance threshold is violated")

    common(sub.add_parser("simulate", help="evolve one packet and integrate its radiation"), True)
    common(sub.add_parser("sweep", help="packet-length scaling sweep"), False)
    common(sub.add_parser("benchmark", help="harmonic oscillator closed-form benchmark"), False)
    p = sub.add_parser("oracle", help="Fock-space operator-algebra residuals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--modes", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--prefix", default="oracle")
    p.add_argument("--output-dir")
    p.add_argument("--check", action="store_true")
    return parser


COMMANDS = {"simulate": _cmd_simulate, "sweep": _cmd_sweep, "benchmark": _cmd_benchmark,
            "oracle": _cmd_oracle}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        checks = COMMANDS[args.command](args)
    except (ConfigError, TruncationError, ValueError, OSError, json.JSONDecodeError) as exc:
        _emit("error", "validation", str(exc))
        return EXIT_INVALID
    except BlowUpError as exc:
        _emit("error", "numerical", str(exc), step=exc.step_index)
        return EXIT_NUMERICAL
    failed = [k for k, c in checks.items() if not c["pass"]]
    if args.check and failed:
        _emit("error", "check", f"acceptance thresholds violated: {failed}", failed=failed)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
