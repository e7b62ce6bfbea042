"""
Chart-wise C1 norm of a compactified field, sampled on polar grids.

Grid suprema are lower bounds of the true suprema. The grid for grid_n
has radii R k / grid_n (k = 0..grid_n) and 4 grid_n angles, so doubling
grid_n refines it without dropping any sample.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from compactify.charts import Chart, CompactifiedField
from polyfield.exceptions import DomainError

logger = logging.getLogger(__name__)

GRID_N = 64
MIN_GRID_N = 32
RADII = {"1": 1.0, "sqrt2": math.sqrt(2.0)}


@dataclass(frozen=True)
class ChartSup:
    sup_value: float
    sup_derivative: float
    argmax_value: tuple[float, float]
    argmax_derivative: tuple[float, float]

    @property
    def worst(self) -> float:
        return max(self.sup_value, self.sup_derivative)


@dataclass(frozen=True)
class C1Report:
    per_chart: Mapping[Chart, ChartSup]
    overall: float
    grid_n: int
    radius: float


def parse_radius(radius) -> float:
    """Accept 1, sqrt(2), or their names "1" and "sqrt2" """
    if isinstance(radius, str):
        if radius not in RADII:
            raise DomainError(f"radius must be one of {sorted(RADII)}, got {radius!r}")
        return RADII[radius]
    for value in RADII.values():
        if math.isclose(float(radius), value, rel_tol=1e-12):
            return value
    raise DomainError(f"radius must be 1 or sqrt(2), got {radius}")


def polar_grid(grid_n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    radii = radius * np.arange(grid_n + 1) / grid_n
    angles = 2.0 * np.pi * np.arange(4 * grid_n) / (4 * grid_n)
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    return (rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel()


def spectral_norm(J: np.ndarray) -> np.ndarray:
    """Largest singular value of each 2x2 block, in closed form"""
    frob2 = np.sum(J * J, axis=(-2, -1))
    det = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
    gap = np.sqrt(np.maximum(frob2 * frob2 - 4.0 * det * det, 0.0))
    return np.sqrt((frob2 + gap) / 2.0)


def c1_norm(
    cf: CompactifiedField, grid_n: int = GRID_N, radius=1.0
) -> C1Report:
    """max over charts of sup |F| and sup ||DF|| over the ball B(radius)"""
    if grid_n < MIN_GRID_N:
        raise DomainError(f"grid_n must be >= {MIN_GRID_N}, got {grid_n}")
    radius = parse_radius(radius)
    x, y = polar_grid(grid_n, radius)

    per_chart = {}
    for chart in Chart:
        system = cf[chart]
        values = np.linalg.norm(system(x, y), axis=-1)
        derivatives = spectral_norm(system.jacobian(x, y))
        i, j = int(np.argmax(values)), int(np.argmax(derivatives))
        per_chart[chart] = ChartSup(
            sup_value=float(values[i]),
            sup_derivative=float(derivatives[j]),
            argmax_value=(float(x[i]), float(y[i])),
            argmax_derivative=(float(x[j]), float(y[j])),
        )
    overall = max(s.worst for s in per_chart.values())
    logger.debug("C1 norm %.6g on grid_n=%d, radius=%.6g", overall, grid_n, radius)
    return C1Report(MappingProxyType(per_chart), overall, grid_n, radius)


def c1_distance(
    a: CompactifiedField, b: CompactifiedField, grid_n: int = GRID_N, radius=1.0
) -> C1Report:
    """C1 norm of the chart-wise difference; a and b must share d"""
    return c1_norm(a - b, grid_n, radius)
