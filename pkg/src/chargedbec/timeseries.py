from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COLUMNS = ("t", "norm2", "x_mean", "v_mean", "a_mean", "a2_mean")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled observables of one run; the integrands of the radiation models."""

    times: np.ndarray
    norm2: np.ndarray
    x_mean: np.ndarray
    v_mean: np.ndarray
    a_mean: np.ndarray
    a2_mean: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("times", "norm2", "x_mean", "v_mean", "a_mean", "a2_mean"):
            a = np.array(getattr(self, name), dtype=float)
            a.setflags(write=False)
            arrays[name] = a
            object.__setattr__(self, name, a)
        n = arrays["times"].shape
        if any(a.ndim != 1 or a.shape != n for a in arrays.values()):
            raise ValueError("time series columns must be 1-D arrays of equal length")
        if n[0] < 2:
            raise ValueError("time series needs at least two samples")
        if np.any(np.diff(arrays["times"]) <= 0):
            raise ValueError("time series times must be strictly increasing")

    def __len__(self):
        return self.times.size

    def columns(self) -> np.ndarray:
        return np.column_stack([self.times, self.norm2, self.x_mean, self.v_mean,
                                self.a_mean, self.a2_mean])

    def cauchy_schwarz_violation(self) -> float:
        """Largest amount by which <a>^2 exceeds <a^2> (<= 0 for a valid series)."""
        return float(np.max(self.a_mean ** 2 - self.a2_mean))
