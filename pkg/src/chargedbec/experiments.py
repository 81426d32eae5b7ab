"""Canned experiments: the harmonic closed-form benchmark and the packet-length sweep.

The sweep sends a drifting Gaussian packet of length ``sigma`` through a
localized force of width ``barrier_width`` and checks that the hydrodynamic
integral falls off as 1/sigma while the incoherent one stays put.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict, field

import numpy as np

from .grid import make_grid
from .potentials import GaussianBarrier, Harmonic, SmoothStep
from .propagator import EvolutionConfig, evolve_and_record
from .radiation import classical_trajectory, integrate_radiation
from .state import PhysicalParams, make_gaussian_packet

log = logging.getLogger(__name__)

# distance (in sigma) at which the packet amplitude drops to 1e-12 of its peak
TAIL_PAD_SIGMAS = math.sqrt(4.0 * math.log(1e12))
REGIME_WIDTH_RATIO = 0.05
REGIME_IMPULSE_RATIO = 0.05


def _points_for(length, dx, minimum=128):
    n = max(minimum, int(math.ceil(length / dx)))
    return 1 << (n - 1).bit_length()


def harmonic_grid(omega, x0, params, dx=0.25):
    sigma = math.sqrt(params.hbar / (2.0 * params.mass * omega))
    half = abs(x0) + (TAIL_PAD_SIGMAS + 2.0) * sigma
    n = _points_for(2.0 * half, dx)
    return make_grid(n, n * dx), sigma


def run_harmonic_benchmark(params: PhysicalParams, omega: float = 1.0, x0: float = 1.0,
                           periods: float = 1.0, steps_per_period: int = 3200,
                           sample_stride: int = 5, dx: float = 0.25) -> dict:
    """Coherent-width packet in V = m w^2 x^2/2 against closed forms.

    Over time T the exact integrals are
        int <a>^2   = w^4 x0^2 (T/2 + sin(2wT)/(4w))
        int <a^2>   = that + w^4 sigma^2 T
    """
    if params.gpe_coupling != 0.0:
        raise ValueError("the harmonic benchmark requires gpe_coupling = 0")
    grid, sigma = harmonic_grid(omega, x0, params, dx)
    period = 2.0 * math.pi / omega
    n_steps = int(round(periods * steps_per_period))
    cfg = EvolutionConfig(period / steps_per_period, n_steps, sample_stride)
    potential = Harmonic(omega)
    psi0 = make_gaussian_packet(grid, x0, sigma, 0.0, params.hbar)
    series = evolve_and_record(psi0, potential, params, cfg)
    point = classical_trajectory(x0, 0.0, potential, params, cfg)
    result = integrate_radiation(series, params, classical=point)

    T = cfg.duration
    w4 = omega ** 4
    cos2 = T / 2.0 + math.sin(2.0 * omega * T) / (4.0 * omega)
    i_hydro_exact = w4 * x0 ** 2 * cos2
    i_incoherent_exact = i_hydro_exact + w4 * sigma ** 2 * T

    t = series.times
    x_exact = x0 * np.cos(omega * t)
    dvdt = (series.v_mean[2:] - series.v_mean[:-2]) / (t[2:] - t[:-2])
    ehrenfest = float(np.max(np.abs(dvdt - series.a_mean[1:-1])))

    def rel(measured, exact):
        return abs(measured - exact) / abs(exact) if exact != 0 else abs(measured)

    return {
        "omega": omega,
        "x0": x0,
        "sigma": sigma,
        "periods": periods,
        "dt": cfg.dt,
        "n_steps": n_steps,
        "n_points": grid.n_points,
        "box_length": grid.box_length,
        "duration": T,
        "i_hydro": result.i_hydro,
        "i_hydro_exact": i_hydro_exact,
        "i_hydro_rel_error": rel(result.i_hydro, i_hydro_exact),
        "i_incoherent": result.i_incoherent,
        "i_incoherent_exact": i_incoherent_exact,
        "i_incoherent_rel_error": rel(result.i_incoherent, i_incoherent_exact),
        "norm_drift": float(np.max(np.abs(series.norm2 - series.norm2[0]))),
        "ehrenfest_residual": ehrenfest,
        "x_mean_max_error": float(np.max(np.abs(series.x_mean - x_exact))),
        "radiation": result.to_dict(),
    }


def harmonic_convergence(params: PhysicalParams, omega: float = 1.0, x0: float = 1.0,
                         levels=(400, 800, 1600, 3200), samples_per_period: int = 400,
                         dx: float = 0.25) -> dict:
    """Max |<x>(t) - x0 cos(wt)| over one period at successively halved dt."""
    grid, sigma = harmonic_grid(omega, x0, params, dx)
    potential = Harmonic(omega)
    psi0 = make_gaussian_packet(grid, x0, sigma, 0.0, params.hbar)
    period = 2.0 * math.pi / omega
    errors = []
    for n_steps in levels:
        cfg = EvolutionConfig(period / n_steps, n_steps, max(1, n_steps // samples_per_period))
        s = evolve_and_record(psi0, potential, params, cfg)
        errors.append(float(np.max(np.abs(s.x_mean - x0 * np.cos(omega * s.times)))))
    ratios = [errors[i] / errors[i + 1] for i in range(len(errors) - 1)]
    return {"dt": [period / n for n in levels], "errors": errors, "ratios": ratios}


@dataclass(frozen=True)
class ScalingSweepConfig:
    sigma_list: tuple = (20.0, 20.0 * 2 ** 0.5, 40.0, 40.0 * 2 ** 0.5, 80.0)
    barrier_width: float = 1.0
    barrier_height: float = 0.1
    drift_velocity: float = 2.0
    margin_factor: float = 6.0
    force_profile: str = "step"
    dx: float = 0.5
    dt: float = 0.02
    sample_stride: int = 10
    variant_coupling: float | None = 0.5
    workers: int = 1

    def __post_init__(self):
        sig = tuple(float(s) for s in self.sigma_list)
        object.__setattr__(self, "sigma_list", sig)
        if len(sig) < 2:
            raise ValueError("sigma_list needs at least two packet lengths")
        if any(s <= 0 for s in sig) or any(b <= a for a, b in zip(sig, sig[1:])):
            raise ValueError("sigma_list must be positive and strictly increasing")
        if not self.barrier_width > 0:
            raise ValueError("barrier_width must be positive")
        if not self.drift_velocity > 0:
            raise ValueError("drift_velocity must be positive")
        if not self.margin_factor >= 6:
            raise ValueError(f"margin_factor must be >= 6, got {self.margin_factor}")
        if self.force_profile not in ("step", "barrier"):
            raise ValueError(f"force_profile must be 'step' or 'barrier', got {self.force_profile!r}")
        if not (self.dx > 0 and self.dt > 0):
            raise ValueError("dx and dt must be positive")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ValueError("sample_stride must be a positive integer")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ValueError("workers must be a positive integer")

    def regime_warnings(self) -> list[str]:
        out = []
        limit = REGIME_WIDTH_RATIO * min(self.sigma_list)
        if self.barrier_width > limit:
            out.append(
                f"barrier_width={self.barrier_width:g} exceeds {REGIME_WIDTH_RATIO:g}*min(sigma)="
                f"{limit:g}: force is not localized relative to the packet"
            )
        return out

    def potential(self):
        if self.force_profile == "step":
            return SmoothStep(self.barrier_height, self.barrier_width, 0.0)
        return GaussianBarrier(self.barrier_height, self.barrier_width, 0.0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sigma_list"] = list(self.sigma_list)
        return d


@dataclass
class SweepRecord:
    sigma: float
    n_points: int
    box_length: float
    n_steps: int
    i_hydro: float
    i_incoherent: float
    e_condensate: float
    impulse: float
    norm_drift: float
    cauchy_schwarz_violation: float
    i_hydro_variant: float | None = None
    i_incoherent_variant: float | None = None
    warnings: list = field(default_factory=list)


@dataclass
class ScalingSweepResult:
    records: list
    exponent: float
    log_prefactor: float
    impulse_spread: float
    incoherent_spread: float
    crossover_sigma: dict
    warnings: list

    def to_dict(self) -> dict:
        return asdict(self)


def _sweep_geometry(cfg: ScalingSweepConfig, sigma: float):
    travel = 2.0 * cfg.margin_factor * sigma
    pad = (TAIL_PAD_SIGMAS + 1.0) * sigma + 4.0 * cfg.barrier_width
    n = _points_for(travel + 2.0 * pad, cfg.dx, minimum=8)
    grid = make_grid(n, n * cfg.dx)
    start = -cfg.margin_factor * sigma
    n_steps = int(math.ceil(travel / cfg.drift_velocity / cfg.dt))
    return grid, start, EvolutionConfig(cfg.dt, n_steps, cfg.sample_stride)


def _run_one(args):
    cfg, params, sigma = args
    grid, start, ecfg = _sweep_geometry(cfg, sigma)
    potential = cfg.potential()
    p0 = params.mass * cfg.drift_velocity
    psi0 = make_gaussian_packet(grid, start, sigma, p0, params.hbar)
    series = evolve_and_record(psi0, potential, params, ecfg)
    rad = integrate_radiation(series, params)
    impulse = params.mass * (series.v_mean[-1] - series.v_mean[0])
    rec = SweepRecord(
        sigma=sigma,
        n_points=grid.n_points,
        box_length=grid.box_length,
        n_steps=ecfg.n_steps,
        i_hydro=rad.i_hydro,
        i_incoherent=rad.i_incoherent,
        e_condensate=rad.e_condensate,
        impulse=float(impulse),
        norm_drift=float(np.max(np.abs(series.norm2 - series.norm2[0]))),
        cauchy_schwarz_violation=series.cauchy_schwarz_violation(),
    )
    if abs(impulse) > REGIME_IMPULSE_RATIO * abs(p0):
        rec.warnings.append(
            f"impulse {impulse:.4g} exceeds {REGIME_IMPULSE_RATIO:g} of drift momentum {p0:.4g}"
        )
    if rec.norm_drift > 1e-8:
        rec.warnings.append(f"norm drift {rec.norm_drift:.3g} exceeds 1e-8")
    if rec.cauchy_schwarz_violation > 1e-10:
        rec.warnings.append("<a>^2 exceeds <a^2> beyond 1e-10")
    if cfg.variant_coupling:
        vparams = params.with_coupling(cfg.variant_coupling)
        vseries = evolve_and_record(psi0, potential, vparams, ecfg)
        vrad = integrate_radiation(vseries, vparams)
        rec.i_hydro_variant = vrad.i_hydro
        rec.i_incoherent_variant = vrad.i_incoherent
    log.info("sigma=%g: i_hydro=%.6g i_incoherent=%.6g impulse=%.6g",
             sigma, rec.i_hydro, rec.i_incoherent, rec.impulse)
    return rec


def _spread(values):
    values = np.asarray(values, dtype=float)
    scale = np.max(np.abs(values))
    return float((values.max() - values.min()) / scale) if scale > 0 else 0.0


def crossover_sigma(exponent, log_prefactor, i_incoherent, n_mean):
    """sigma at which n^2 * i_hydro(sigma) equals n * i_incoherent on the fitted power law."""
    if n_mean <= 0 or exponent == 0 or i_incoherent <= 0:
        return None
    return float(math.exp((math.log(i_incoherent / n_mean) - log_prefactor) / exponent))


def run_scaling_sweep(cfg: ScalingSweepConfig, params: PhysicalParams) -> ScalingSweepResult:
    jobs = [(cfg, params, s) for s in cfg.sigma_list]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(j) for j in jobs]
    records.sort(key=lambda r: r.sigma)

    sig = np.array([r.sigma for r in records])
    ih = np.array([r.i_hydro for r in records])
    inc = np.array([r.i_incoherent for r in records])
    if np.all(ih > 0):
        exponent, log_pref = (float(c) for c in np.polyfit(np.log(sig), np.log(ih), 1))
    else:
        exponent, log_pref = float("nan"), float("nan")
    mean_inc = float(np.mean(inc))
    crossover = {}
    for n in sorted({params.n_mean, 100.0}):
        crossover[f"{n:g}"] = (crossover_sigma(exponent, log_pref, mean_inc, n)
                               if np.isfinite(exponent) else None)
    return ScalingSweepResult(
        records=records,
        exponent=exponent,
        log_prefactor=log_pref,
        impulse_spread=_spread([r.impulse for r in records]),
        incoherent_spread=_spread(inc),
        crossover_sigma=crossover,
        warnings=cfg.regime_warnings(),
    )
