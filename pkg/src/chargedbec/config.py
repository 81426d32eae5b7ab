"""Run configuration: JSON in, validated objects out, every default made explicit."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .experiments import ScalingSweepConfig
from .grid import Grid, make_grid
from .potentials import Potential, potential_from_dict
from .propagator import EvolutionConfig, check_stability
from .state import PhysicalParams, make_gaussian_packet

EXPERIMENTS = ("simulate", "sweep", "benchmark")

DEFAULTS: dict[str, Any] = {
    "experiment": "simulate",
    "grid": {"n_points": 512, "box_length": 64.0},
    "physics": {"hbar": 1.0, "mass": 1.0, "charge": 1.0, "light_speed": 1.0,
                "gpe_coupling": 0.0, "n_mean": 1.0},
    "potential": {"kind": "zero"},
    "packet": {"center": 0.0, "sigma": 1.0, "momentum": 0.0},
    "evolution": {"dt": 0.005, "n_steps": 1000, "sample_stride": 10},
    "sweep": ScalingSweepConfig().to_dict(),
    "benchmark": {"omega": 1.0, "x0": 1.0, "periods": 1.0, "steps_per_period": 3200,
                  "sample_stride": 5, "dx": 0.25},
    "output": {"directory": "output", "prefix": "run"},
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    experiment: str
    grid: Grid
    params: PhysicalParams
    potential: Potential
    packet: dict
    evolution: EvolutionConfig
    sweep: ScalingSweepConfig
    benchmark: dict
    output: dict
    resolved: dict
    warnings: list = field(default_factory=list)

    def echo(self) -> dict:
        """Fully resolved document; feeding it back to parse_config reproduces the run."""
        return json.loads(json.dumps(self.resolved))


def _merge(section, given, defaults):
    if not isinstance(given, dict):
        raise ConfigError(f"section {section!r} must be an object")
    unknown = sorted(set(given) - set(defaults))
    if unknown:
        raise ConfigError(f"unknown keys in {section!r}: {unknown}")
    out = dict(defaults)
    out.update(given)
    return out


def _build(section, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}: {exc}") from exc


def parse_config(text: str | dict) -> RunConfig:
    """Parse and validate a JSON run configuration (string or already-decoded dict)."""
    if isinstance(text, str):
        try:
            doc = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    else:
        doc = dict(text)
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(doc) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown top-level keys: {unknown}")

    experiment = doc.get("experiment", DEFAULTS["experiment"])
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"experiment must be one of {list(EXPERIMENTS)}, got {experiment!r}")

    resolved = {"experiment": experiment}
    for key in ("grid", "physics", "packet", "evolution", "sweep", "benchmark", "output"):
        resolved[key] = _merge(key, doc.get(key, {}), DEFAULTS[key])
    pot = doc.get("potential", DEFAULTS["potential"])
    if not isinstance(pot, dict):
        raise ConfigError("section 'potential' must be an object")
    resolved["potential"] = dict(pot)

    grid_doc = resolved["grid"]
    n = grid_doc["n_points"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigError(f"grid: n_points must be an integer, got {n!r}")
    if n < 8 or n & (n - 1):
        raise ConfigError(f"grid: n_points must be a power of two >= 8, got {n}")
    grid = _build("grid", make_grid, n, grid_doc["box_length"])
    params = _build("physics", PhysicalParams, **{k: float(v) for k, v in resolved["physics"].items()})
    potential = _build("potential", potential_from_dict, resolved["potential"])
    resolved["potential"] = potential.to_dict()
    evolution = _build("evolution", EvolutionConfig, **resolved["evolution"])
    sweep_doc = dict(resolved["sweep"])
    sweep_doc["sigma_list"] = tuple(sweep_doc["sigma_list"])
    sweep = _build("sweep", ScalingSweepConfig, **sweep_doc)

    warnings = []
    if experiment == "simulate":
        _build("packet", make_gaussian_packet, grid, float(resolved["packet"]["center"]),
               float(resolved["packet"]["sigma"]), float(resolved["packet"]["momentum"]),
               params.hbar)
        _build("evolution", check_stability, grid, params, evolution.dt)
        _build("potential", potential.values, grid, params.mass)
    elif experiment == "sweep":
        warnings.extend(sweep.regime_warnings())
    elif experiment == "benchmark":
        b = resolved["benchmark"]
        if not b["omega"] > 0 or not b["periods"] > 0:
            raise ConfigError("benchmark: omega and periods must be positive")
        if params.gpe_coupling != 0.0:
            raise ConfigError("benchmark: requires physics.gpe_coupling = 0")

    return RunConfig(
        experiment=experiment,
        grid=grid,
        params=params,
        potential=potential,
        packet=resolved["packet"],
        evolution=evolution,
        sweep=sweep,
        benchmark=resolved["benchmark"],
        output=resolved["output"],
        resolved=resolved,
        warnings=warnings,
    )
