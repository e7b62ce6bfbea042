from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from polyfield.exceptions import DomainError

MIN_N = 64


def vertex_grid(n: int) -> np.ndarray:
    """x_k = k / (n - 1), k = 0..n-1"""
    return np.linspace(0.0, 1.0, n)


def trapezoid_weights(n: int) -> np.ndarray:
    h = 1.0 / (n - 1)
    weights = np.full(n, h)
    weights[0] = weights[-1] = h / 2.0
    return weights


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Values of a function on the uniform vertex grid of [0, 1]"""

    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.n < MIN_N:
            raise DomainError(f"grid resolution n must be >= {MIN_N}, got {self.n}")
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape != (self.n,):
            raise DomainError(f"expected {self.n} grid values, got {values.shape[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, n: int, func) -> GridFunction:
        x = vertex_grid(n)
        return cls(n, np.broadcast_to(func(x), x.shape))

    @classmethod
    def constant(cls, n: int, value: float) -> GridFunction:
        return cls(n, np.full(n, float(value)))

    @property
    def h(self) -> float:
        return 1.0 / (self.n - 1)

    @cached_property
    def x(self) -> np.ndarray:
        return vertex_grid(self.n)

    @cached_property
    def weights(self) -> np.ndarray:
        return trapezoid_weights(self.n)

    def integrate(self, values=None) -> float:
        """Composite trapezoid rule"""
        values = self.values if values is None else values
        return float(self.weights @ values)

    def inner(self, other: GridFunction) -> float:
        return self.integrate(self.values * other.values)

    def l2_norm(self) -> float:
        return float(np.sqrt(self.integrate(self.values**2)))

    def h1_norm(self) -> float:
        """sqrt(||w||^2 + ||D+ w||^2) with forward differences"""
        slope = np.diff(self.values) / self.h
        return float(np.sqrt(self.l2_norm() ** 2 + self.h * np.sum(slope**2)))

    def mean(self) -> float:
        return self.integrate()

    def __add__(self, other: GridFunction) -> GridFunction:
        return GridFunction(self.n, self.values + other.values)

    def __sub__(self, other: GridFunction) -> GridFunction:
        return GridFunction(self.n, self.values - other.values)

    def __mul__(self, factor: float) -> GridFunction:
        return GridFunction(self.n, self.values * factor)

    __rmul__ = __mul__
