"""Strang split-step Fourier integrator for the 1-D Gross-Pitaevskii equation.

    i hbar d psi/dt = [p^2/2m + V(x) + g |psi|^2] psi

Each step is potential half-kick, kinetic drift in k-space, potential
half-kick with the nonlinear phase rebuilt from the updated density.  The
norm is never renormalized; drift is a diagnostic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .grid import Grid
from .potentials import Potential
from .state import (PhysicalParams, WaveFunction, acceleration_field,
                    expectation_position, expectation_velocity)
from .timeseries import TimeSeries

log = logging.getLogger(__name__)


class BlowUpError(RuntimeError):
    """Non-finite values appeared in the wave function."""

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


@dataclass(frozen=True)
class EvolutionConfig:
    dt: float
    n_steps: int
    sample_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be an integer >= 1, got {self.n_steps}")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ValueError(f"sample_stride must be an integer >= 1, got {self.sample_stride}")

    @property
    def duration(self) -> float:
        return self.dt * self.n_steps

    def sample_steps(self) -> np.ndarray:
        steps = np.arange(0, self.n_steps + 1, self.sample_stride)
        if steps[-1] != self.n_steps:
            steps = np.append(steps, self.n_steps)
        return steps


def check_stability(grid: Grid, params: PhysicalParams, dt: float):
    phase = params.hbar * grid.k_max ** 2 * abs(dt) / (2.0 * params.mass)
    if not phase < np.pi:
        raise ValueError(
            f"dt={dt} violates the kinetic stability guard: hbar k_max^2 dt / 2m = "
            f"{phase:.4g} >= pi"
        )


class SplitStepper:
    """Precomputed phases for repeated steps at fixed dt on one grid."""

    def __init__(self, grid: Grid, potential: Potential, params: PhysicalParams, dt: float):
        check_stability(grid, params, dt)
        self.grid = grid
        self.dt = dt
        self.params = params
        self.potential = potential
        self._half_factor = -0.5j * dt / params.hbar
        self._v = potential.values(grid, params.mass)
        self._g = params.gpe_coupling
        self._kinetic = np.exp(-0.5j * params.hbar * grid.wavenumbers ** 2 * dt / params.mass)
        if self._g == 0.0:
            self._v_half = np.exp(self._half_factor * self._v)

    def _half_kick(self, psi):
        if self._g == 0.0:
            return self._v_half * psi
        return np.exp(self._half_factor * (self._v + self._g * np.abs(psi) ** 2)) * psi

    def advance(self, psi: np.ndarray) -> np.ndarray:
        psi = self._half_kick(psi)
        psi = np.fft.ifft(self._kinetic * np.fft.fft(psi))
        return self._half_kick(psi)


def step(psi: WaveFunction, potential: Potential, params: PhysicalParams,
         dt: float) -> WaveFunction:
    """One Strang step of length ``dt`` (negative dt runs backwards)."""
    values = SplitStepper(psi.grid, potential, params, dt).advance(psi.values)
    if not np.all(np.isfinite(values)):
        raise BlowUpError("non-finite wave function after step", step_index=0)
    return WaveFunction(psi.grid, values, psi.time + dt)


def evolve(psi0: WaveFunction, potential: Potential, params: PhysicalParams,
           dt: float, n_steps: int) -> WaveFunction:
    stepper = SplitStepper(psi0.grid, potential, params, dt)
    values = np.array(psi0.values)
    for i in range(n_steps):
        values = stepper.advance(values)
        if not np.all(np.isfinite(values)):
            raise BlowUpError(f"non-finite wave function at step {i + 1}", step_index=i + 1)
    return WaveFunction(psi0.grid, values, psi0.time + n_steps * dt)


def _observe(psi, potential, params):
    a = acceleration_field(psi, potential, params)
    rho = psi.density
    dx = psi.grid.dx
    return (psi.time, dx * np.sum(rho), expectation_position(psi),
            expectation_velocity(psi, params), dx * np.sum(rho * a), dx * np.sum(rho * a * a))


def evolve_and_record(psi0: WaveFunction, potential: Potential, params: PhysicalParams,
                      cfg: EvolutionConfig) -> TimeSeries:
    """Run ``cfg.n_steps`` steps, sampling observables every ``sample_stride`` steps.

    The first and last steps are always sampled.
    """
    grid = psi0.grid
    stepper = SplitStepper(grid, potential, params, cfg.dt)
    sample_at = set(cfg.sample_steps().tolist())
    rows = [_observe(psi0, potential, params)]
    values = np.array(psi0.values)
    for i in range(1, cfg.n_steps + 1):
        values = stepper.advance(values)
        if i in sample_at:
            if not np.all(np.isfinite(values)):
                raise BlowUpError(f"non-finite wave function by step {i}", step_index=i)
            psi = WaveFunction(grid, values, psi0.time + i * cfg.dt)
            rows.append(_observe(psi, potential, params))
    series = TimeSeries(*np.array(rows, dtype=float).T)
    log.debug("evolved %d steps, norm drift %.3e", cfg.n_steps,
              series.norm2[-1] - series.norm2[0])
    return series
