"""
Heuristic Morse-Smale check: every equilibrium hyperbolic and no separatrix
passing close to a saddle other than through its own branch start. Periodic
orbits are not examined, so a passing report is a necessary condition only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from compactify.charts import CompactifiedField
from equilibria.census import EquilibriumCensus, equilibrium_census
from equilibria.classify import Classification, Equilibrium
from portrait.disk import ATOL, RTOL
from portrait.separatrices import SEPARATRIX_T, Separatrix, separatrices

logger = logging.getLogger(__name__)

CONNECTION_TOL = 1e-4
DEPARTURE_RADIUS = 1e-2


@dataclass(frozen=True)
class MorseSmaleReport:
    all_hyperbolic: bool
    saddle_connection_suspected: bool
    census: EquilibriumCensus
    separatrices: list[Separatrix] = field(default_factory=list)
    connections: list[tuple[Equilibrium, Equilibrium]] = field(default_factory=list)


def upper_saddles(census: EquilibriumCensus) -> list[Equilibrium]:
    """Saddles visible on the disk: finite ones and those of U1, U2, V1, V2"""
    return [
        e for e in census.all if e.classification is Classification.SADDLE
    ]


def _passes_near(
    branch: Separatrix, saddle: Equilibrium, tol: float, departure: float
) -> bool:
    distance = np.linalg.norm(
        branch.trajectory.points - np.asarray(saddle.disk_position), axis=-1
    )
    if saddle is branch.saddle:
        # the branch starts on its own saddle; only a return counts
        left = np.flatnonzero(distance > departure)
        if not left.size:
            return False
        distance = distance[left[0]:]
    return bool(np.min(distance) < tol)


def morse_smale_check(
    cf: CompactifiedField,
    census: EquilibriumCensus | None = None,
    T: float = SEPARATRIX_T,
    connection_tol: float = CONNECTION_TOL,
    departure_radius: float = DEPARTURE_RADIUS,
    rtol: float = RTOL,
    atol: float = ATOL,
    **census_options,
) -> MorseSmaleReport:
    census = census or equilibrium_census(cf, **census_options)
    saddles = upper_saddles(census)

    branches: list[Separatrix] = []
    connections = []
    for saddle in saddles:
        for branch in separatrices(cf, saddle, T=T, rtol=rtol, atol=atol):
            branches.append(branch)
            for other in saddles:
                if _passes_near(branch, other, connection_tol, departure_radius):
                    connections.append((saddle, other))
                    logger.warning(
                        "Separatrix of saddle at %s passes within %g of saddle at %s",
                        saddle.disk_position, connection_tol, other.disk_position,
                    )

    report = MorseSmaleReport(
        all_hyperbolic=census.all_hyperbolic,
        saddle_connection_suspected=bool(connections),
        census=census,
        separatrices=branches,
        connections=connections,
    )
    logger.info(
        "Morse-Smale check: %d equilibria, %d separatrices, hyperbolic=%s, "
        "saddle connection suspected=%s",
        len(census.all), len(branches),
        report.all_hyperbolic, report.saddle_connection_suspected,
    )
    return report
