import logging
from dataclasses import dataclass, field

import numpy as np

from compactify.charts import Chart, CompactifiedField, compactify
from equilibria.classify import Classification
from polyfield.polynomials import BivariatePoly
from polyfield.problem import ProblemSpec, limit_field, worked_example_spec
from portrait.services.portrait_service import PhasePortrait, PortraitService
from portrait.svg import SvgOptions, glyph_count

logger = logging.getLogger(__name__)

FOCUS = (0.419643, -0.771845)
NODE_DIRECTION = 1.83929
NODE_ALIAS = 0.543689
LOCATION_TOL = 1e-4
EXPECTED_GLYPHS = 4

# x' = -x^3 - x^2 - x - 2xy + 1, y' = -y^2 - y - x^2 y and its mirror
PRINTED_FIRST = (
    BivariatePoly({(3, 0): -1, (2, 0): -1, (1, 0): -1, (1, 1): -2, (0, 0): 1}),
    BivariatePoly({(0, 2): -1, (0, 1): -1, (2, 1): -1}),
)
PRINTED_SECOND = (
    BivariatePoly({(3, 0): -1, (2, 0): 1, (1, 0): 1, (1, 1): 2, (0, 0): 1}),
    BivariatePoly({(0, 2): 1, (0, 1): 1, (2, 1): -1}),
)


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ReproductionReport:
    claims: list[Claim] = field(default_factory=list)
    svg: str = ""

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    @property
    def failures(self) -> list[Claim]:
        return [claim for claim in self.claims if not claim.passed]


class ReproduceService:
    """
    Rebuild the worked example from its problem data and check each of its
    published facts. The published chart systems carry the labels U1 and U2
    the other way round; the check pairs each with the chart that produces it.
    """

    def __init__(self, spec: ProblemSpec | None = None, svg_options: SvgOptions | None = None):
        self.spec = spec or worked_example_spec()
        self.svg_options = svg_options
        self.report = ReproductionReport()

    def claim(self, name: str, passed: bool, detail: str = "") -> None:
        claim = Claim(name, bool(passed), detail)
        self.report.claims.append(claim)
        log = logger.info if claim.passed else logger.error
        log("%s: %s%s", "PASS" if claim.passed else "FAIL", name, f" ({detail})" if detail else "")

    def check_charts(self, cf: CompactifiedField) -> None:
        for chart, printed in ((Chart.U2, PRINTED_FIRST), (Chart.U1, PRINTED_SECOND)):
            system = cf[chart]
            self.claim(
                f"chart {chart.value} system is coefficient exact",
                (system.Fx, system.Fy) == printed,
                "x' = {}, y' = {}".format(*system.format()),
            )

    def check_finite(self, portrait: PhasePortrait) -> None:
        finite = portrait.report.census.finite
        self.claim("exactly two finite equilibria", len(finite) == 2, f"found {len(finite)}")
        origin = [e for e in finite if np.linalg.norm(e.coords) < LOCATION_TOL]
        self.claim(
            "origin is a saddle",
            len(origin) == 1 and origin[0].classification is Classification.SADDLE,
        )
        focus = [
            e for e in finite
            if np.linalg.norm(np.subtract(e.coords, FOCUS)) < LOCATION_TOL
        ]
        self.claim(
            f"stable focus near {FOCUS}",
            len(focus) == 1 and focus[0].classification is Classification.STABLE_FOCUS,
            f"at {focus[0].coords}" if focus else "not found",
        )

    def check_infinite(self, portrait: PhasePortrait) -> None:
        infinite = portrait.report.census.infinite
        nodes = [
            e for e in infinite
            if e.chart is Chart.U1 and abs(e.coords[0] - NODE_DIRECTION) < LOCATION_TOL
        ]
        node = nodes[0] if len(nodes) == 1 else None
        self.claim(
            f"stable node at infinity in direction x = {NODE_DIRECTION} of U1",
            node is not None and node.classification is Classification.STABLE_NODE,
        )
        alias = node.alias if node is not None else None
        self.claim(
            f"the same node at x = {NODE_ALIAS} of U2",
            alias is not None
            and alias[0] is Chart.U2
            and abs(alias[1] - NODE_ALIAS) < LOCATION_TOL,
        )
        antipodes = [e for e in infinite if e.chart is Chart.V1]
        self.claim(
            "antipodal node is unstable",
            len(antipodes) == 1
            and antipodes[0].classification is Classification.UNSTABLE_NODE,
        )
        self.claim(
            "no other equilibria at infinity", len(infinite) == 2, f"found {len(infinite)}"
        )

    def check_morse_smale(self, portrait: PhasePortrait) -> None:
        report = portrait.report
        self.claim("all equilibria hyperbolic", report.all_hyperbolic)
        self.claim(
            "no saddle connection suspected",
            not report.saddle_connection_suspected,
            f"{len(report.separatrices)} separatrices traced",
        )

    def check_svg(self, document: str) -> None:
        count = glyph_count(document)
        self.claim(
            f"portrait shows {EXPECTED_GLYPHS} equilibria",
            count == EXPECTED_GLYPHS,
            f"found {count}",
        )

    def run(self) -> ReproductionReport:
        cf = compactify(limit_field(self.spec))
        self.check_charts(cf)
        portrait = PortraitService(cf).build()
        self.check_finite(portrait)
        self.check_infinite(portrait)
        self.check_morse_smale(portrait)
        self.report.svg = portrait.svg(self.svg_options)
        self.check_svg(self.report.svg)
        logger.info(
            "Reproduction: %d of %d claims hold",
            len(self.report.claims) - len(self.report.failures),
            len(self.report.claims),
        )
        return self.report


def reproduce_example() -> ReproductionReport:
    return ReproduceService().run()
