"""Periodic 1-D grid with spectral differentiation.

Wavenumbers follow the FFT ordering (non-negative frequencies first, then
negative ones).  The Nyquist mode ``j = n/2`` carries ``+pi*n/L`` and is
dropped from odd-order derivatives so real inputs give real derivatives.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    n_points: int
    box_length: float
    dx: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)
    wavenumbers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n_points
        if n < 8 or n & (n - 1):
            raise ValueError(f"n_points must be a power of two >= 8, got {n}")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")
        dx = self.box_length / n
        j = np.arange(n)
        j = np.where(j <= n // 2, j, j - n)
        k = 2.0 * np.pi * j / self.box_length
        x = -0.5 * self.box_length + dx * np.arange(n)
        k.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "wavenumbers", k)

    @property
    def x_min(self) -> float:
        return -0.5 * self.box_length

    @property
    def k_max(self) -> float:
        return float(np.max(np.abs(self.wavenumbers)))

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n_points, self.dx)


def make_grid(n_points: int, box_length: float) -> Grid:
    return Grid(int(n_points), float(box_length))


def _check_length(grid: Grid, *arrays):
    for a in arrays:
        if np.shape(a) != (grid.n_points,):
            raise ValueError(
                f"array of shape {np.shape(a)} does not match grid with {grid.n_points} points"
            )


def spectral_derivative(grid: Grid, f) -> np.ndarray:
    """First derivative d/dx of ``f`` by FFT, Nyquist mode zeroed."""
    f = np.asarray(f)
    _check_length(grid, f)
    ik = 1j * grid.wavenumbers
    ik[grid.n_points // 2] = 0.0
    df = np.fft.ifft(ik * np.fft.fft(f))
    return df.real if np.isrealobj(f) else df


def spectral_second_derivative(grid: Grid, f) -> np.ndarray:
    f = np.asarray(f)
    _check_length(grid, f)
    d2f = np.fft.ifft(-(grid.wavenumbers ** 2) * np.fft.fft(f))
    return d2f.real if np.isrealobj(f) else d2f


def inner_product(grid: Grid, f, g) -> complex:
    """Discrete ``integral conj(f) g dx`` on the periodic box."""
    f = np.asarray(f)
    g = np.asarray(g)
    _check_length(grid, f, g)
    return complex(grid.dx * np.vdot(f, g))
