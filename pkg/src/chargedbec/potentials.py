"""External potentials V(x) and their gradients.

Analytic kinds return exact gradients; ``Tabulated`` is differentiated
spectrally, so it should only hold smooth periodic data.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .grid import Grid, spectral_derivative


class Potential:
    kind = "abstract"

    def values(self, grid: Grid, mass: float = 1.0) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, grid: Grid, mass: float = 1.0) -> np.ndarray:
        raise NotImplementedError

    def gradient_at(self, x, mass: float = 1.0):
        """Gradient at arbitrary points (used by the point-particle integrator)."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(Potential):
    kind = "zero"

    def values(self, grid, mass=1.0):
        return np.zeros(grid.n_points)

    def gradient(self, grid, mass=1.0):
        return np.zeros(grid.n_points)

    def gradient_at(self, x, mass=1.0):
        return np.zeros_like(np.asarray(x, dtype=float))

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class Harmonic(Potential):
    """``V = m omega^2 x^2 / 2``."""

    omega: float
    kind = "harmonic"

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"harmonic omega must be positive, got {self.omega}")

    def values(self, grid, mass=1.0):
        return 0.5 * mass * self.omega ** 2 * grid.x ** 2

    def gradient(self, grid, mass=1.0):
        return self.gradient_at(grid.x, mass)

    def gradient_at(self, x, mass=1.0):
        return mass * self.omega ** 2 * np.asarray(x, dtype=float)

    def to_dict(self):
        return {"kind": self.kind, "omega": self.omega}


@dataclass(frozen=True)
class GaussianBarrier(Potential):
    """``V = height * exp(-(x - center)^2 / (2 width^2))``."""

    height: float
    width: float
    center: float = 0.0
    kind = "gaussian_barrier"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"barrier width must be positive, got {self.width}")

    def values(self, grid, mass=1.0):
        u = (grid.x - self.center) / self.width
        return self.height * np.exp(-0.5 * u ** 2)

    def gradient(self, grid, mass=1.0):
        return self.gradient_at(grid.x, mass)

    def gradient_at(self, x, mass=1.0):
        u = (np.asarray(x, dtype=float) - self.center) / self.width
        return -self.height * u / self.width * np.exp(-0.5 * u ** 2)

    def to_dict(self):
        return {"kind": self.kind, "height": self.height, "width": self.width,
                "center": self.center}


@dataclass(frozen=True)
class SmoothStep(Potential):
    """Potential step of total rise ``height`` spread over ``width``.

    ``V = height/2 * (1 + erf((x - center) / (sqrt(2) width)))``, so the force
    ``-dV/dx`` is a Gaussian of standard deviation ``width`` whose integral is
    ``-height``.  A localized force with a net impulse.
    """

    height: float
    width: float
    center: float = 0.0
    kind = "smooth_step"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"step width must be positive, got {self.width}")

    def values(self, grid, mass=1.0):
        u = (grid.x - self.center) / (np.sqrt(2.0) * self.width)
        return 0.5 * self.height * (1.0 + erf(u))

    def gradient(self, grid, mass=1.0):
        return self.gradient_at(grid.x, mass)

    def gradient_at(self, x, mass=1.0):
        u = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.height / (np.sqrt(2.0 * np.pi) * self.width) * np.exp(-0.5 * u ** 2)

    def to_dict(self):
        return {"kind": self.kind, "height": self.height, "width": self.width,
                "center": self.center}


@dataclass(frozen=True, eq=False)
class Tabulated(Potential):
    table: np.ndarray
    kind = "tabulated"

    def __post_init__(self):
        table = np.array(self.table, dtype=float)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def _checked(self, grid):
        if self.table.shape != (grid.n_points,):
            raise ValueError(
                f"tabulated potential has {self.table.size} values, grid has {grid.n_points}"
            )
        return self.table

    def values(self, grid, mass=1.0):
        return self._checked(grid)

    def gradient(self, grid, mass=1.0):
        return spectral_derivative(grid, self._checked(grid))

    def gradient_at(self, x, mass=1.0):
        raise ValueError("tabulated potentials have no off-grid gradient")

    def to_dict(self):
        return {"kind": self.kind, "values": self.table.tolist()}


_KINDS = {
    "zero": (Zero, ()),
    "harmonic": (Harmonic, ("omega",)),
    "gaussian_barrier": (GaussianBarrier, ("height", "width", "center")),
    "smooth_step": (SmoothStep, ("height", "width", "center")),
    "tabulated": (Tabulated, ("values",)),
}


def potential_from_dict(spec: dict) -> Potential:
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind not in _KINDS:
        raise ValueError(f"unknown potential kind {kind!r}; expected one of {sorted(_KINDS)}")
    cls, allowed = _KINDS[kind]
    unknown = set(spec) - set(allowed)
    if unknown:
        raise ValueError(f"unknown keys for potential {kind!r}: {sorted(unknown)}")
    if kind == "tabulated":
        return Tabulated(np.asarray(spec["values"], dtype=float))
    return cls(**{k: float(v) for k, v in spec.items()})
