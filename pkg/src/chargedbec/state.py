"""Wave packets, physical parameters and single-particle observables.

All expectation values are over the normalized mean field, i.e. per particle.
Accelerations follow the force law with B = 0:

    m a(x) = -dV/dx - g d|psi|^2/dx
"""
from __future__ import annotations

from dataclasses import dataclass, asdict, replace

import numpy as np

from .grid import Grid, inner_product, spectral_derivative
from .potentials import Potential

# |psi| at the box edge, relative to the peak, must stay below this
TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    hbar: float = 1.0
    mass: float = 1.0
    charge: float = 1.0
    light_speed: float = 1.0
    gpe_coupling: float = 0.0
    n_mean: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "light_speed"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.n_mean >= 0:
            raise ValueError(f"n_mean must be non-negative, got {self.n_mean}")

    @property
    def larmor_prefactor(self) -> float:
        """(2/3) q^2 / c^3."""
        return 2.0 * self.charge ** 2 / (3.0 * self.light_speed ** 3)

    def with_coupling(self, g: float) -> "PhysicalParams":
        return replace(self, gpe_coupling=g)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class WaveFunction:
    grid: Grid
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise ValueError(
                f"wave function has shape {values.shape}, grid has {self.grid.n_points} points"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def scaled(self, factor: complex) -> "WaveFunction":
        return WaveFunction(self.grid, factor * self.values, self.time)


def make_gaussian_packet(grid: Grid, center: float, sigma: float, momentum: float = 0.0,
                         hbar: float = 1.0) -> WaveFunction:
    """Gaussian packet with position variance ``sigma**2`` and mean momentum ``momentum``.

    psi(x) = (2 pi sigma^2)^(-1/4) exp(-(x - c)^2 / (4 sigma^2) + i p x / hbar)
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    lo, hi = grid.x_min, grid.x_min + grid.box_length
    edge = min(center - lo, hi - center)
    if edge <= 0 or np.exp(-edge ** 2 / (4.0 * sigma ** 2)) > TAIL_TOLERANCE:
        raise ValueError(
            f"packet (center={center}, sigma={sigma}) is too wide for box "
            f"[{lo}, {hi}): edge amplitude exceeds {TAIL_TOLERANCE:g} of peak"
        )
    x = grid.x
    amp = (2.0 * np.pi * sigma ** 2) ** -0.25 * np.exp(-((x - center) ** 2) / (4.0 * sigma ** 2))
    return WaveFunction(grid, amp * np.exp(1j * momentum * x / hbar))


def norm_squared(psi: WaveFunction) -> float:
    return inner_product(psi.grid, psi.values, psi.values).real


def expectation_position(psi: WaveFunction) -> float:
    return float(psi.grid.dx * np.sum(psi.grid.x * psi.density))


def position_variance(psi: WaveFunction) -> float:
    rho = psi.density
    dx = psi.grid.dx
    mean = dx * np.sum(psi.grid.x * rho)
    return float(dx * np.sum((psi.grid.x - mean) ** 2 * rho))


def expectation_velocity(psi: WaveFunction, params: PhysicalParams) -> float:
    """<p>/m from the current form, (hbar/m) Im <psi|d psi/dx>."""
    dpsi = spectral_derivative(psi.grid, psi.values)
    return params.hbar / params.mass * inner_product(psi.grid, psi.values, dpsi).imag


def acceleration_field(psi: WaveFunction, potential: Potential,
                       params: PhysicalParams) -> np.ndarray:
    grid = psi.grid
    force = -potential.gradient(grid, params.mass)
    if params.gpe_coupling != 0.0:
        force = force - params.gpe_coupling * spectral_derivative(grid, psi.density)
    return force / params.mass


def expectation_acceleration(psi: WaveFunction, potential: Potential,
                             params: PhysicalParams) -> float:
    a = acceleration_field(psi, potential, params)
    return float(psi.grid.dx * np.sum(psi.density * a))


def expectation_acceleration_squared(psi: WaveFunction, potential: Potential,
                                     params: PhysicalParams) -> float:
    a = acceleration_field(psi, potential, params)
    return float(psi.grid.dx * np.sum(psi.density * a * a))
