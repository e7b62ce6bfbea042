"""
Chart systems of the compactified field.

Sphere charts (y1, y2, y3) on S^2:

    U1: y1 > 0, (x, y) = (y2 / y1, y3 / y1)     plane: (u, v) = (1/y, x/y)
    U2: y2 > 0, (x, y) = (y1 / y2, y3 / y2)     plane: (u, v) = (x/y, 1/y)
    U3: y3 > 0, (x, y) = (y1 / y3, y2 / y3)     plane: (u, v) = (x, y)

V1, V2, V3 use the same quotients on the opposite half-spheres. Their
systems are the U systems times (-1)^(d-1) at identical coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Mapping

from polyfield.exceptions import CompactificationError, DomainError
from polyfield.fields import PlanarField, PolynomialPair
from polyfield.polynomials import Axis, BivariatePoly, UnivariatePoly

logger = logging.getLogger(__name__)


class Chart(str, Enum):
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"

    @property
    def axis(self) -> int:
        """Index of the sphere coordinate that is nonzero on the chart"""
        return int(self.value[1]) - 1

    @property
    def sign(self) -> int:
        return 1 if self.value[0] == "U" else -1

    @property
    def antipode(self) -> Chart:
        prefix = "V" if self.sign > 0 else "U"
        return Chart(f"{prefix}{self.value[1]}")

    @classmethod
    def of(cls, axis: int, sign: int) -> Chart:
        return cls(f"{'U' if sign > 0 else 'V'}{axis + 1}")


@dataclass(frozen=True)
class ChartField(PolynomialPair):
    """x' = Fx(x, y), y' = Fy(x, y) in one chart"""

    chart: Chart
    Fx: BivariatePoly
    Fy: BivariatePoly

    @property
    def components(self) -> tuple[BivariatePoly, BivariatePoly]:
        return self.Fx, self.Fy

    def __sub__(self, other: ChartField) -> ChartField:
        return ChartField(self.chart, self.Fx - other.Fx, self.Fy - other.Fy)

    def scaled(self, factor: float) -> ChartField:
        return ChartField(self.chart, self.Fx * factor, self.Fy * factor)

    def format(self) -> tuple[str, str]:
        return self.Fx.format(("x", "y")), self.Fy.format(("x", "y"))


@dataclass(frozen=True)
class CompactifiedField:
    """The six chart systems of a planar field compactified with degree d"""

    source: PlanarField | None
    d: int
    charts: Mapping[Chart, ChartField]

    def __getitem__(self, chart: Chart) -> ChartField:
        return self.charts[Chart(chart)]

    def __hash__(self):
        return hash((self.source, self.d, tuple(self.charts.items())))

    def __sub__(self, other: CompactifiedField) -> CompactifiedField:
        """Chart-wise difference; both sides must use the same d"""
        if self.d != other.d:
            raise DomainError(
                f"chart systems built with d={self.d} and d={other.d} "
                "are not comparable"
            )
        return CompactifiedField(
            None,
            self.d,
            MappingProxyType(
                {chart: self[chart] - other[chart] for chart in Chart}
            ),
        )

    def scaled(self, factor: float) -> CompactifiedField:
        return CompactifiedField(
            None,
            self.d,
            MappingProxyType(
                {chart: self[chart].scaled(factor) for chart in Chart}
            ),
        )


def _homogenize(p: BivariatePoly, d: int, chart: Chart) -> BivariatePoly:
    """
    y^d p(1/y, x/y) for U1 and y^d p(x/y, 1/y) for U2:
    c u^i v^j becomes c x^j y^(d-i-j), resp. c x^i y^(d-i-j).
    """
    terms: dict[tuple[int, int], float] = {}
    for (i, j), c in p.terms.items():
        if i + j > d:
            raise CompactificationError(
                f"monomial u^{i} v^{j} exceeds the chart degree d={d}"
            )
        x_power = j if chart == Chart.U1 else i
        terms[(x_power, d - i - j)] = c
    return BivariatePoly(terms)


def compactify(X: PlanarField, d: int | None = None) -> CompactifiedField:
    """
    Build the six chart systems of X. `d` defaults to the degree of X; a
    larger d pads the field so two problems can share their charts.
    """
    d = X.d if d is None else d
    x, y = BivariatePoly.u(), BivariatePoly.v()

    a1, b1 = _homogenize(X.P, d, Chart.U1), _homogenize(X.Q, d, Chart.U1)
    a2, b2 = _homogenize(X.P, d, Chart.U2), _homogenize(X.Q, d, Chart.U2)
    systems = {
        Chart.U1: ChartField(Chart.U1, b1 - x * a1, -(y * a1)),
        Chart.U2: ChartField(Chart.U2, a2 - x * b2, -(y * b2)),
        Chart.U3: ChartField(Chart.U3, X.P, X.Q),
    }
    factor = (-1) ** (d - 1)
    for chart in (Chart.U1, Chart.U2, Chart.U3):
        systems[chart.antipode] = ChartField(
            chart.antipode,
            systems[chart].Fx * factor,
            systems[chart].Fy * factor,
        )
    for chart, system in systems.items():
        for poly in system.components:
            if any(i < 0 or j < 0 for i, j in poly.terms):
                raise CompactificationError(
                    f"negative exponent in chart {chart.value}"
                )
    logger.debug("compactified with d=%d: U1 x' = %s", d, systems[Chart.U1].format()[0])
    return CompactifiedField(
        X, d, MappingProxyType({chart: systems[chart] for chart in Chart})
    )


def equator_poly(cf: CompactifiedField, chart: Chart) -> UnivariatePoly:
    """Fx(x, 0) of chart U1 or U2 (V1, V2 give the same roots)"""
    chart = Chart(chart)
    if chart not in (Chart.U1, Chart.U2, Chart.V1, Chart.V2):
        raise DomainError(f"chart {chart.value} does not meet the equator at y=0")
    return cf[chart].Fx.restrict(Axis.V, 0.0)
