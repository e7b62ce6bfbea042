"""
Orbits of a compactified field on the Poincaré disk.

An orbit is integrated in one chart system at a time. While the chart
coordinates stay inside [-switch_bound, switch_bound] the chart is kept;
beyond it the orbit moves to the chart of the dominant sphere component,
where both coordinates are at most 1. Only U1, U2, V1, V2 and U3 are used:
they cover the upper hemisphere, and their systems are positive multiples of
the same vector field there, so orbits (not times) agree across charts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.spatial import cKDTree

from compactify.charts import Chart, CompactifiedField
from compactify.sphere import disk_to_sphere, select_chart, sphere_to_chart
from polyfield.exceptions import DomainError

logger = logging.getLogger(__name__)

RTOL = 1e-9
ATOL = 1e-12
SWITCH_BOUND = 1.2
EQUILIBRIUM_TOL = 1e-10
EQUATOR_TOL = 1e-9
MAX_SWITCHES = 1000


class Termination(str, Enum):
    EQUILIBRIUM = "Equilibrium"
    EQUATOR = "Equator"
    TIME_LIMIT = "TimeLimit"
    BLOWUP = "Blowup"


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.FORWARD else -1.0


@dataclass(frozen=True, eq=False)
class DiskTrajectory:
    points: np.ndarray  # (m, 2) disk coordinates
    charts: tuple[Chart, ...]  # chart of every point
    termination: Termination
    direction: Direction = Direction.FORWARD
    elapsed: float = 0.0  # summed chart times

    @property
    def chart_log(self) -> list[tuple[int, Chart]]:
        """(index, chart) at the start and at every chart switch"""
        log = []
        for index, chart in enumerate(self.charts):
            if not log or log[-1][1] != chart:
                log.append((index, chart))
        return log

    @property
    def start(self) -> np.ndarray:
        return self.points[0]

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]

    def __len__(self) -> int:
        return self.points.shape[0]


def chart_to_disk(chart: Chart, x, y) -> np.ndarray:
    """Vectorized chart -> disk map, shape (..., 2)"""
    x, y = np.asarray(x, float), np.asarray(y, float)
    delta = np.sqrt(1.0 + x * x + y * y)
    lifted = [None, None, None]
    free = [k for k in range(3) if k != chart.axis]
    lifted[chart.axis] = np.ones_like(x)
    lifted[free[0]], lifted[free[1]] = x, y
    return np.stack([lifted[0], lifted[1]], axis=-1) * (chart.sign / delta)[..., None]


def disk_to_chart_coords(chart: Chart, p: float, q: float) -> np.ndarray:
    return np.array(sphere_to_chart(chart, disk_to_sphere(p, q)))


def _chart_of(p: float, q: float) -> Chart:
    return select_chart(disk_to_sphere(p, q))


def integrate_disk(
    cf: CompactifiedField,
    start,
    T: float,
    direction: Direction = Direction.FORWARD,
    chart: Chart | None = None,
    switch_bound: float = SWITCH_BOUND,
    sample_dt: float | None = None,
    rtol: float = RTOL,
    atol: float = ATOL,
    equilibrium_tol: float = EQUILIBRIUM_TOL,
    equator_tol: float = EQUATOR_TOL,
) -> DiskTrajectory:
    """
    Integrate from the disk point `start` for at most T units of chart time.
    `chart` forces the first chart; `sample_dt` adds dense-output samples
    between solver steps.
    """
    direction = Direction(direction)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    p, q = (float(c) for c in start)
    current = Chart(chart) if chart is not None else _chart_of(p, q)
    if current is Chart.V3:
        raise DomainError("V3 does not meet the closed upper hemisphere")
    z = disk_to_chart_coords(current, p, q)

    points, charts = [np.array([p, q])], [current]
    remaining, switches = float(T), 0
    sign = direction.sign

    while True:
        system = cf[current]
        if remaining <= 0.0:
            termination = Termination.TIME_LIMIT
            break
        if np.linalg.norm(system(*z)) < equilibrium_tol:
            termination = Termination.EQUILIBRIUM
            break
        on_equator = current is not Chart.U3 and abs(z[1]) <= equator_tol

        def rhs(t, state):
            return sign * system(state[0], state[1])

        def at_equilibrium(t, state):
            return np.linalg.norm(system(state[0], state[1])) - equilibrium_tol

        def at_equator(t, state):
            return abs(state[1]) - equator_tol

        def out_of_chart(t, state):
            return max(abs(state[0]), abs(state[1])) - switch_bound

        at_equilibrium.terminal = at_equator.terminal = out_of_chart.terminal = True
        at_equilibrium.direction = at_equator.direction = -1
        out_of_chart.direction = 1
        events = [at_equilibrium, out_of_chart]
        if current is not Chart.U3 and not on_equator:
            events.append(at_equator)

        with np.errstate(over="ignore", invalid="ignore"):
            solution = solve_ivp(
                rhs, (0.0, remaining), z, method="RK45", rtol=rtol, atol=atol,
                events=events, dense_output=sample_dt is not None,
            )

        if sample_dt is not None and solution.t.size > 1:
            times = np.union1d(
                np.arange(0.0, solution.t[-1], sample_dt), solution.t[-1:]
            )
            xs, ys = solution.sol(times)
        else:
            xs, ys = solution.y
        finite = np.isfinite(xs) & np.isfinite(ys)
        xs, ys = xs[finite][1:], ys[finite][1:]
        if xs.size:
            points.extend(chart_to_disk(current, xs, ys))
            charts.extend([current] * xs.size)
        remaining -= float(solution.t[-1])

        if solution.status == -1 or not np.all(finite):
            termination = Termination.BLOWUP
            logger.warning("Orbit integration failed in %s: %s", current.value, solution.message)
            break
        if solution.status == 0:
            termination = Termination.TIME_LIMIT
            break
        if solution.t_events[0].size:
            termination = Termination.EQUILIBRIUM
            break
        if len(events) > 2 and solution.t_events[2].size:
            termination = Termination.EQUATOR
            break

        switches += 1
        if switches > MAX_SWITCHES:
            logger.warning("Orbit exceeded %d chart switches", MAX_SWITCHES)
            termination = Termination.TIME_LIMIT
            break
        p, q = points[-1]
        previous, current = current, _chart_of(p, q)
        z = disk_to_chart_coords(current, p, q)
        logger.debug("Chart switch %s -> %s at (%.6f, %.6f)", previous.value, current.value, p, q)

    return DiskTrajectory(
        np.array(points), tuple(charts), termination, direction, float(T) - remaining
    )


def _directed_distance(a: np.ndarray, b: np.ndarray) -> float:
    """max over points of a of the distance to the polyline b"""
    if b.shape[0] == 1:
        return float(np.max(np.linalg.norm(a - b[0], axis=-1)))
    _, nearest = cKDTree(b).query(a)
    best = np.full(a.shape[0], np.inf)
    for offset in (-1, 0):
        first = np.clip(nearest + offset, 0, b.shape[0] - 2)
        start, end = b[first], b[first + 1]
        segment = end - start
        length2 = np.maximum(np.sum(segment * segment, axis=-1), 1e-300)
        s = np.clip(np.sum((a - start) * segment, axis=-1) / length2, 0.0, 1.0)
        distance = np.linalg.norm(a - (start + s[:, None] * segment), axis=-1)
        best = np.minimum(best, distance)
    return float(best.max())


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two polylines (point to segment)"""
    a, b = np.asarray(a, float).reshape(-1, 2), np.asarray(b, float).reshape(-1, 2)
    return max(_directed_distance(a, b), _directed_distance(b, a))
