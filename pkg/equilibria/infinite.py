"""
Equilibria on the equator of the Poincaré sphere.

Roots of the U1 equator polynomial give every direction at infinity except
(0, +-1), which is checked at x = 0 in U2. A direction seen by both charts is
listed once, with its U2 (or V2) coordinates kept as an alias.
"""

from __future__ import annotations

import logging

import numpy as np

from compactify.charts import Chart, CompactifiedField, equator_poly
from compactify.sphere import chart_point_to_disk, chart_to_sphere, sphere_to_chart
from equilibria.classify import (
    HYPERBOLICITY_TOL,
    Classification,
    Equilibrium,
    classify,
    equilibrium_at,
)
from polyfield.exceptions import DomainError

logger = logging.getLogger(__name__)

EQUATOR_TOL = 1e-12


def _alias(x: float) -> tuple[Chart, float, float] | None:
    """Coordinates in U2/V2 of the equator point (x, 0) of U1"""
    if x == 0.0:
        return None
    point = chart_to_sphere(Chart.U1, x, 0.0)
    chart = Chart.U2 if point[1] > 0 else Chart.V2
    return (chart, *sphere_to_chart(chart, point))


def _degenerate_marker(cf: CompactifiedField) -> Equilibrium:
    J = np.asarray(cf[Chart.U1].jacobian(0.0, 0.0), float)
    eigenvalues, _ = classify(J)
    return Equilibrium(
        chart=Chart.U1,
        coords=(0.0, 0.0),
        disk_position=(1.0, 0.0),
        eigenvalues=eigenvalues,
        classification=Classification.DEGENERATE,
        at_infinity=True,
        jacobian=J,
        note="equator polynomial vanishes identically: the whole equator "
        "consists of non-isolated equilibria",
    )


def antipodal(e: Equilibrium, d: int, tol: float = HYPERBOLICITY_TOL) -> Equilibrium:
    """
    The diametrically opposite equator point. Its chart system is the same
    polynomial times (-1)^(d-1), so for even d the eigenvalues change sign.
    """
    on_equator = e.chart in (Chart.U1, Chart.U2, Chart.V1, Chart.V2) and abs(
        e.coords[1]
    ) <= EQUATOR_TOL
    if not on_equator:
        raise DomainError(
            f"equilibrium at {e.coords} in chart {e.chart.value} is not on "
            "the equator"
        )
    factor = (-1) ** (d - 1)
    J = factor * np.asarray(e.jacobian, float)
    eigenvalues, classification = classify(J, tol)
    if e.classification == Classification.DEGENERATE:
        classification = Classification.DEGENERATE
    alias = None
    if e.alias is not None:
        chart, x, y = e.alias
        alias = (chart.antipode, x, y)
    return Equilibrium(
        chart=e.chart.antipode,
        coords=e.coords,
        disk_position=(-e.disk_position[0], -e.disk_position[1]),
        eigenvalues=eigenvalues,
        classification=classification,
        at_infinity=True,
        alias=alias,
        jacobian=J,
        note=e.note,
    )


def infinite_equilibria(
    cf: CompactifiedField, tol: float = HYPERBOLICITY_TOL
) -> list[Equilibrium]:
    """Equator equilibria and their antipodes, classified in their charts"""
    p1 = equator_poly(cf, Chart.U1)
    if p1.is_zero():
        logger.warning("equator polynomial vanishes identically (d=%d)", cf.d)
        marker = _degenerate_marker(cf)
        return [marker, antipodal(marker, cf.d, tol)]

    found: list[Equilibrium] = []
    for x in p1.real_roots():
        found.append(
            equilibrium_at(
                cf[Chart.U1],
                Chart.U1,
                x,
                0.0,
                chart_point_to_disk(Chart.U1, x, 0.0),
                tol,
                at_infinity=True,
                alias=_alias(x),
            )
        )

    p2 = equator_poly(cf, Chart.U2)
    scale = max((abs(c) for c in p2.coeffs), default=0.0)
    if abs(p2(0.0)) <= EQUATOR_TOL * max(scale, 1.0):
        found.append(
            equilibrium_at(
                cf[Chart.U2],
                Chart.U2,
                0.0,
                0.0,
                chart_point_to_disk(Chart.U2, 0.0, 0.0),
                tol,
                at_infinity=True,
            )
        )

    result = []
    for e in found:
        result.extend([e, antipodal(e, cf.d, tol)])
    logger.debug("%d equilibria on the equator", len(result))
    return result
