from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from compactify.charts import Chart, CompactifiedField
from equilibria.classify import Classification, Equilibrium, eigenvectors
from polyfield.exceptions import DomainError
from portrait.disk import DiskTrajectory, Direction, chart_to_disk, integrate_disk

logger = logging.getLogger(__name__)

SEED_OFFSET = 1e-6
SEPARATRIX_T = 200.0


@dataclass(frozen=True)
class Separatrix:
    saddle: Equilibrium
    stable: bool
    side: int  # +1 or -1 along the eigenvector
    trajectory: DiskTrajectory


def separatrices(
    cf: CompactifiedField,
    saddle: Equilibrium,
    T: float = SEPARATRIX_T,
    offset: float = SEED_OFFSET,
    **options,
) -> list[Separatrix]:
    """
    Seed at `offset` along both signs of each eigenvector of the saddle;
    unstable branches run forward, stable branches backward. Seeds of an
    equator saddle that fall into the lower hemisphere are skipped, so such
    a saddle yields three branches instead of four.
    """
    if saddle.classification is not Classification.SADDLE:
        raise DomainError(
            f"separatrices need a saddle, got {saddle.classification.value}"
        )
    chart = saddle.chart
    system = cf[chart]
    J = system.jacobian(*saddle.coords)
    stable_vector, unstable_vector = eigenvectors(J)
    origin = np.array(saddle.coords, dtype=float)

    branches = []
    for stable, vector in ((False, unstable_vector), (True, stable_vector)):
        for side in (1, -1):
            x, y = origin + side * offset * vector
            if _below_equator(chart, y):
                continue
            start = chart_to_disk(chart, x, y)
            trajectory = integrate_disk(
                cf, start, T,
                direction=Direction.BACKWARD if stable else Direction.FORWARD,
                chart=chart, **options,
            )
            branches.append(Separatrix(saddle, stable, side, trajectory))
            logger.debug(
                "%s separatrix (%+d) of saddle at %s ends with %s",
                "Stable" if stable else "Unstable", side,
                saddle.disk_position, trajectory.termination.value,
            )
    return branches


def _below_equator(chart: Chart, y: float) -> bool:
    """Chart point strictly in the lower hemisphere"""
    if chart is Chart.U3:
        return False
    if chart is Chart.V3:
        return True
    return chart.sign * y < 0.0
