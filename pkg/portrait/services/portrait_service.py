import logging
from dataclasses import dataclass, field

import numpy as np

from compactify.charts import CompactifiedField
from portrait.disk import DiskTrajectory, Direction, Termination, integrate_disk
from portrait.morse_smale import MorseSmaleReport, morse_smale_check
from portrait.svg import SvgOptions, render_svg

logger = logging.getLogger(__name__)

FILL_RADII = (0.3, 0.6, 0.9)
FILL_ANGLES = 8
FILL_T = 50.0


@dataclass(frozen=True)
class PhasePortrait:
    report: MorseSmaleReport
    orbits: list[DiskTrajectory] = field(default_factory=list)

    @property
    def equilibria(self):
        return self.report.census.all

    def svg(self, options: SvgOptions | None = None) -> str:
        return render_svg(
            [*self.orbits, *self.report.separatrices], self.equilibria, options
        )


def fill_seeds(radii=FILL_RADII, angles: int = FILL_ANGLES) -> np.ndarray:
    """Disk points on concentric circles, offset by half a step per ring"""
    seeds = []
    for ring, radius in enumerate(radii):
        theta = 2.0 * np.pi * (np.arange(angles) + 0.5 * (ring % 2)) / angles
        seeds.extend(np.stack([radius * np.cos(theta), radius * np.sin(theta)], -1))
    return np.array(seeds).reshape(-1, 2)


class PortraitService:
    """
    Global phase portrait: equilibrium census, separatrices of every saddle
    and a ring of orbits traced both ways from fixed seeds
    """

    def __init__(
        self,
        cf: CompactifiedField,
        fill_radii=FILL_RADII,
        fill_angles: int = FILL_ANGLES,
        fill_T: float = FILL_T,
        **census_options,
    ):
        self.cf = cf
        self.seeds = fill_seeds(fill_radii, fill_angles)
        self.fill_T = fill_T
        self.census_options = census_options

    def orbits(self) -> list[DiskTrajectory]:
        orbits = []
        for start in self.seeds:
            for direction in Direction:
                orbit = integrate_disk(self.cf, start, self.fill_T, direction)
                if orbit.termination is Termination.BLOWUP:
                    logger.warning("Orbit from %s (%s) blew up", start, direction.value)
                orbits.append(orbit)
        return orbits

    def build(self) -> PhasePortrait:
        report = morse_smale_check(self.cf, **self.census_options)
        portrait = PhasePortrait(report, self.orbits())
        logger.info(
            "Portrait: %d equilibria, %d separatrices, %d orbits",
            len(portrait.equilibria), len(report.separatrices), len(portrait.orbits),
        )
        return portrait
