from __future__ import annotations

from dataclasses import dataclass, field

from compactify.charts import Chart, CompactifiedField
from equilibria.classify import HYPERBOLICITY_TOL, Equilibrium
from equilibria.finite import SEARCH_RADIUS, SEEDS_PER_AXIS, finite_equilibria
from equilibria.infinite import infinite_equilibria


@dataclass(frozen=True)
class EquilibriumCensus:
    finite: list[Equilibrium]
    infinite: list[Equilibrium]
    warnings: list[str] = field(default_factory=list)

    @property
    def all(self) -> list[Equilibrium]:
        return [*self.finite, *self.infinite]

    @property
    def all_hyperbolic(self) -> bool:
        return all(e.hyperbolic for e in self.all)


def equilibrium_census(
    cf: CompactifiedField,
    radius: float = SEARCH_RADIUS,
    seeds_per_axis: int = SEEDS_PER_AXIS,
    seed: int = 0,
    tol: float = HYPERBOLICITY_TOL,
) -> EquilibriumCensus:
    """Finite equilibria of the U3 system plus the equator equilibria"""
    finite = finite_equilibria(
        cf[Chart.U3], radius, seeds_per_axis, seed, tol
    )
    return EquilibriumCensus(
        finite=list(finite),
        infinite=infinite_equilibria(cf, tol),
        warnings=list(finite.warnings),
    )
