"""Low-energy radiated energy under four models.

With P = (2/3) q^2 / c^3 and the per-particle mean field psi:

    classical point particle   P * int a(t)^2 dt
    hydrodynamic               P * int <a>^2 dt
    single particle            P * int <a^2> dt
    condensate (mean n)        P * (n^2 int <a>^2 dt + n int <a^2> dt)
"""
from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .potentials import Potential
from .propagator import BlowUpError, EvolutionConfig
from .state import PhysicalParams
from .timeseries import TimeSeries


@dataclass(frozen=True)
class RadiationResult:
    i_hydro: float
    i_incoherent: float
    e_classical: float
    e_hydro: float
    e_single: float
    e_condensate: float
    prefactor: float
    n_mean: float

    def to_dict(self) -> dict:
        return asdict(self)


def integrate_radiation(series: TimeSeries, params: PhysicalParams,
                        classical: TimeSeries | None = None) -> RadiationResult:
    """Trapezoid integrals of <a>^2 and <a^2> over the whole series.

    ``e_classical`` comes from ``classical`` (a point-particle series) when
    given; otherwise the series itself is treated as a point particle, whose
    radiation is ``P * int a^2 dt`` with a = <a>.
    """
    if len(series) < 2:
        raise ValueError("need at least two samples to integrate")
    t = series.times
    i_hydro = float(np.trapezoid(series.a_mean ** 2, t))
    i_incoherent = float(np.trapezoid(series.a2_mean, t))
    if classical is None:
        i_classical = i_hydro
    else:
        i_classical = float(np.trapezoid(classical.a_mean ** 2, classical.times))
    pre = params.larmor_prefactor
    n = params.n_mean
    return RadiationResult(
        i_hydro=i_hydro,
        i_incoherent=i_incoherent,
        e_classical=pre * i_classical,
        e_hydro=pre * i_hydro,
        e_single=pre * i_incoherent,
        e_condensate=pre * (n * n * i_hydro + n * i_incoherent),
        prefactor=pre,
        n_mean=n,
    )


def classical_trajectory(x0: float, v0: float, potential: Potential, params: PhysicalParams,
                         cfg: EvolutionConfig) -> TimeSeries:
    """RK4 point particle, m x'' = -dV/dx, sampled like a quantum run.

    The GPE coupling plays no role; ``a2_mean`` is ``a_mean**2``.
    """
    m = params.mass
    dt = cfg.dt

    def accel(x):
        return -float(potential.gradient_at(x, m)) / m

    sample_at = set(cfg.sample_steps().tolist())
    x, v = float(x0), float(v0)
    rows = [(0.0, x, v, accel(x))]
    for i in range(1, cfg.n_steps + 1):
        k1x, k1v = v, accel(x)
        k2x, k2v = v + 0.5 * dt * k1v, accel(x + 0.5 * dt * k1x)
        k3x, k3v = v + 0.5 * dt * k2v, accel(x + 0.5 * dt * k2x)
        k4x, k4v = v + dt * k3v, accel(x + dt * k3x)
        x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not (np.isfinite(x) and np.isfinite(v)):
            raise BlowUpError(f"classical trajectory diverged at step {i}", step_index=i)
        if i in sample_at:
            rows.append((i * dt, x, v, accel(x)))
    t, xs, vs, a = np.array(rows).T
    return TimeSeries(t, np.ones_like(t), xs, vs, a, a * a)
