"""
Coordinate maps between the plane, the sphere, the six charts and the
Poincaré disk.
"""

from __future__ import annotations

import numpy as np

from compactify.charts import Chart
from polyfield.exceptions import DomainError

HEMISPHERE_TOL = 1e-12


def central_projection(u: float, v: float) -> np.ndarray:
    """(u, v) -> (u, v, 1) / sqrt(u^2 + v^2 + 1) on the upper hemisphere"""
    delta = np.sqrt(u * u + v * v + 1.0)
    return np.array([u, v, 1.0]) / delta


def chart_to_sphere(chart: Chart, x: float, y: float) -> np.ndarray:
    chart = Chart(chart)
    delta = np.sqrt(1.0 + x * x + y * y)
    lifted = np.empty(3)
    lifted[chart.axis] = 1.0
    free = [k for k in range(3) if k != chart.axis]
    lifted[free[0]], lifted[free[1]] = x, y
    return chart.sign * lifted / delta


def sphere_to_chart(chart: Chart, point) -> tuple[float, float]:
    chart = Chart(chart)
    point = np.asarray(point, float)
    pivot = point[chart.axis]
    if pivot * chart.sign <= 0.0:
        raise DomainError(
            f"sphere point {point.tolist()} is outside chart {chart.value}"
        )
    free = [k for k in range(3) if k != chart.axis]
    return float(point[free[0]] / pivot), float(point[free[1]] / pivot)


def select_chart(point) -> Chart:
    """Chart whose pivot is the dominant sphere component"""
    point = np.asarray(point, float)
    axis = int(np.argmax(np.abs(point)))
    return Chart.of(axis, 1 if point[axis] >= 0.0 else -1)


def chart_point_to_disk(chart: Chart, x: float, y: float) -> tuple[float, float]:
    """Lift to the sphere and project orthogonally to the (y1, y2) plane"""
    point = chart_to_sphere(chart, x, y)
    if point[2] < -HEMISPHERE_TOL:
        raise DomainError(
            f"chart point ({x}, {y}) of {Chart(chart).value} lies in the "
            "lower hemisphere"
        )
    return float(point[0]), float(point[1])


def disk_to_sphere(p: float, q: float) -> np.ndarray:
    radius2 = p * p + q * q
    if radius2 > 1.0 + 1e-9:
        raise DomainError(f"({p}, {q}) is outside the closed unit disk")
    return np.array([p, q, np.sqrt(max(0.0, 1.0 - radius2))])


def disk_to_chart(p: float, q: float) -> tuple[Chart, float, float]:
    point = disk_to_sphere(p, q)
    chart = select_chart(point)
    return (chart, *sphere_to_chart(chart, point))


def plane_to_chart(chart: Chart, u: float, v: float) -> tuple[float, float]:
    return sphere_to_chart(chart, central_projection(u, v))


def chart_to_plane(chart: Chart, x: float, y: float) -> tuple[float, float]:
    """Inverse central projection; undefined on the equator"""
    point = chart_to_sphere(chart, x, y)
    if point[2] <= 0.0:
        raise DomainError(
            f"chart point ({x}, {y}) of {Chart(chart).value} has no finite "
            "preimage"
        )
    return float(point[0] / point[2]), float(point[1] / point[2])
