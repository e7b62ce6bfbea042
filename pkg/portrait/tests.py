import numpy as np
from django.test import SimpleTestCase

from compactify.charts import Chart, compactify
from compactify.sphere import chart_point_to_disk
from equilibria.census import equilibrium_census
from equilibria.classify import Classification
from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField
from polyfield.polynomials import BivariatePoly
from polyfield.problem import limit_field, worked_example_spec
from portrait.disk import (
    ATOL,
    RTOL,
    Direction,
    Termination,
    chart_to_disk,
    hausdorff,
    integrate_disk,
)
from portrait.morse_smale import morse_smale_check
from portrait.separatrices import separatrices
from portrait.serializers import (
    TRAJECTORY_CSV_COLUMNS,
    DiskTrajectorySerializer,
    MorseSmaleReportSerializer,
    ReproductionReportSerializer,
    trajectory_rows,
)
from portrait.services.portrait_service import PortraitService, fill_seeds
from portrait.services.reproduce_service import ReproduceService
from portrait.svg import SvgOptions, glyph_count, render_svg

def worked_example():
    return compactify(limit_field(worked_example_spec()))


def homoclinic_field():
    """x' = y, y' = x - x^2"""
    return PlanarField(
        BivariatePoly({(0, 1): 1.0}),
        BivariatePoly({(1, 0): 1.0, (2, 0): -1.0}),
    )


class WorkedExampleOrbitsTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cf = worked_example()
        cls.census = equilibrium_census(cls.cf)
        cls.focus = next(
            e for e in cls.census.finite
            if e.classification is Classification.STABLE_FOCUS
        )
        cls.node = next(
            e for e in cls.census.infinite
            if e.classification is Classification.STABLE_NODE
        )

    def test_start_at_equilibrium(self):
        trajectory = integrate_disk(self.cf, self.focus.disk_position, 10.0)
        self.assertEqual(len(trajectory), 1)
        self.assertEqual(trajectory.termination, Termination.EQUILIBRIUM)

    def test_orbit_falls_into_the_focus(self):
        trajectory = integrate_disk(self.cf, (0.1, -0.1), 100.0)
        self.assertLess(
            np.linalg.norm(trajectory.end - self.focus.disk_position), 1e-4
        )

    def test_orbit_near_the_equator_reaches_the_node_at_infinity(self):
        trajectory = integrate_disk(self.cf, (0.9, 0.0), 100.0)
        self.assertLess(
            np.linalg.norm(trajectory.end - self.node.disk_position), 1e-4
        )
        self.assertEqual(trajectory.chart_log[0][1], Chart.U1)

    def test_orbits_stay_in_the_disk(self):
        orbits = PortraitService(
            self.cf, fill_radii=(0.5, 0.95), fill_angles=6, fill_T=20.0
        ).orbits()
        self.assertEqual(len(orbits), 24)
        for orbit in orbits:
            radius = np.linalg.norm(orbit.points, axis=-1)
            self.assertLessEqual(radius.max(), 1.0 + 1e-9)

    def test_backward_orbit_retraces_the_forward_one(self):
        forward = integrate_disk(self.cf, (0.2, 0.3), 0.5, sample_dt=1e-3)
        self.assertEqual(forward.termination, Termination.TIME_LIMIT)
        backward = integrate_disk(
            self.cf, forward.end, 0.5, Direction.BACKWARD, sample_dt=1e-3
        )
        self.assertLess(np.linalg.norm(backward.end - forward.start), 1e-6)
        self.assertLess(hausdorff(forward.points, backward.points), 1e-5)

    def test_lower_hemisphere_chart_is_rejected(self):
        with self.assertRaises(DomainError):
            integrate_disk(self.cf, (0.1, 0.1), 1.0, chart=Chart.V3)
        with self.assertRaises(DomainError):
            integrate_disk(self.cf, (0.1, 0.1), 0.0)


class ChartSwitchingTest(SimpleTestCase):
    def setUp(self):
        # stable focus x' = -x - y, y' = x - y
        self.cf = compactify(PlanarField.linear(-1.0, -1.0, 1.0, -1.0))
        self.start = chart_point_to_disk(Chart.U3, 2.0, 0.0)

    def test_switching_does_not_change_the_orbit(self):
        plain = integrate_disk(
            self.cf, self.start, 100.0, chart=Chart.U3,
            switch_bound=np.inf, sample_dt=1e-4,
        )
        switched = integrate_disk(self.cf, self.start, 100.0, sample_dt=1e-4)
        self.assertEqual({chart for _, chart in plain.chart_log}, {Chart.U3})
        self.assertEqual(switched.chart_log[0][1], Chart.U1)
        self.assertEqual(switched.chart_log[-1][1], Chart.U3)
        self.assertEqual(plain.termination, Termination.EQUILIBRIUM)
        self.assertEqual(switched.termination, Termination.EQUILIBRIUM)
        self.assertLess(hausdorff(plain.points, switched.points), 1e-7)

    def test_chart_to_disk_matches_the_sphere_lift(self):
        rng = np.random.default_rng(5)
        for chart in (Chart.U1, Chart.U2, Chart.U3):
            for x, y in rng.uniform(0.0, 1.0, size=(20, 2)):
                np.testing.assert_allclose(
                    chart_to_disk(chart, x, y), chart_point_to_disk(chart, x, y)
                )


class HausdorffTest(SimpleTestCase):
    def test_identical_polylines(self):
        line = np.array([[0.0, 0.0], [0.5, 0.1], [0.9, 0.0]])
        self.assertLess(hausdorff(line, line), 1e-15)

    def test_distance_to_segments_not_vertices(self):
        a = np.array([[0.0, 0.0], [1.0, 0.0]])
        b = np.array([[0.0, 0.1], [0.5, 0.1], [1.0, 0.1]])
        self.assertAlmostEqual(hausdorff(a, b), 0.1, places=12)
        self.assertAlmostEqual(hausdorff(a, b[[0, 2]]), 0.1, places=12)


class SeparatricesTest(SimpleTestCase):
    def test_linear_saddle_separatrices_lie_on_the_axes(self):
        cf = compactify(PlanarField.linear(1.0, 0.0, 0.0, -1.0))
        saddle = equilibrium_census(cf).finite[0]
        branches = separatrices(cf, saddle, T=50.0)
        self.assertEqual(len(branches), 4)
        for branch in branches:
            off_axis = branch.trajectory.points[:, 0 if branch.stable else 1]
            self.assertLess(np.abs(off_axis).max(), 1e-6)

    def test_worked_example_unstable_branches_end_at_attractors(self):
        cf = worked_example()
        census = equilibrium_census(cf)
        origin = next(
            e for e in census.finite if e.classification is Classification.SADDLE
        )
        attractors = [
            np.asarray(e.disk_position)
            for e in census.all
            if e.classification
            in (Classification.STABLE_FOCUS, Classification.STABLE_NODE)
        ]
        branches = separatrices(cf, origin)
        self.assertEqual(len(branches), 4)
        for branch in branches:
            if branch.stable:
                continue
            gap = min(np.linalg.norm(branch.trajectory.end - a) for a in attractors)
            self.assertLess(gap, 1e-4)

    def test_worked_example_branches_agree_under_tolerance_halving(self):
        cf = worked_example()
        census = equilibrium_census(cf)
        origin = next(
            e for e in census.finite if e.classification is Classification.SADDLE
        )
        positions = np.array([e.disk_position for e in census.all])

        def endpoints(rtol, atol):
            branches = separatrices(cf, origin, rtol=rtol, atol=atol)
            return [
                (
                    branch.trajectory.termination,
                    branch.trajectory.end,
                    int(np.argmin(np.linalg.norm(positions - branch.trajectory.end, axis=-1))),
                )
                for branch in branches
            ]

        coarse = endpoints(RTOL, ATOL)
        fine = endpoints(RTOL / 2, ATOL / 2)
        self.assertEqual(len(coarse), len(fine))
        for (kind, end, target), (kind_fine, end_fine, target_fine) in zip(coarse, fine):
            self.assertEqual(kind, kind_fine)
            self.assertEqual(target, target_fine)
            self.assertLess(np.linalg.norm(end - end_fine), 1e-3)

    def test_non_saddle_is_rejected(self):
        cf = worked_example()
        focus = next(
            e for e in equilibrium_census(cf).finite
            if e.classification is Classification.STABLE_FOCUS
        )
        with self.assertRaises(DomainError):
            separatrices(cf, focus)


class MorseSmaleTest(SimpleTestCase):
    def test_worked_example(self):
        report = morse_smale_check(worked_example())
        self.assertTrue(report.all_hyperbolic)
        self.assertFalse(report.saddle_connection_suspected)
        self.assertEqual(len(report.census.finite), 2)
        self.assertEqual(len(report.census.infinite), 2)
        data = MorseSmaleReportSerializer(report).data
        self.assertEqual(len(data["separatrices"]), 4)

    def test_center_is_not_hyperbolic(self):
        report = morse_smale_check(compactify(PlanarField.linear(0.0, -1.0, 1.0, 0.0)))
        self.assertFalse(report.all_hyperbolic)
        self.assertFalse(report.saddle_connection_suspected)

    def test_homoclinic_loop_is_detected(self):
        with self.assertLogs("portrait.morse_smale", level="WARNING"):
            report = morse_smale_check(
                compactify(homoclinic_field()), rtol=1e-12, atol=1e-14
            )
        self.assertTrue(report.saddle_connection_suspected)


class RenderSvgTest(SimpleTestCase):
    def test_empty_portrait_is_the_disk_outline(self):
        document = render_svg()
        self.assertIn('<circle class="disk"', document)
        self.assertNotIn("<polyline", document)
        self.assertEqual(glyph_count(document), 0)

    def test_one_glyph_per_equilibrium(self):
        census = equilibrium_census(worked_example())
        document = render_svg([], census.all)
        self.assertEqual(glyph_count(document), 4)
        self.assertIn('class="equilibrium Saddle"', document)
        self.assertIn('class="equilibrium StableFocus"', document)

    def test_output_is_deterministic(self):
        cf = worked_example()
        census = equilibrium_census(cf)
        orbit = integrate_disk(cf, (0.1, -0.1), 5.0)
        options = SvgOptions(size=400)
        first = render_svg([orbit], census.all, options)
        second = render_svg([integrate_disk(cf, (0.1, -0.1), 5.0)], census.all, options)
        self.assertEqual(first, second)
        self.assertIn('width="400"', first)
        self.assertEqual(first.count('<polyline class="orbit"'), 1)


class PortraitExportTest(SimpleTestCase):
    def test_fill_seeds(self):
        seeds = fill_seeds((0.5,), 4)
        np.testing.assert_allclose(seeds[0], (0.5, 0.0), atol=1e-15)
        self.assertEqual(seeds.shape, (4, 2))

    def test_trajectory_rows(self):
        orbit = integrate_disk(worked_example(), (0.1, -0.1), 1.0)
        rows = trajectory_rows([orbit])
        self.assertEqual(len(rows), len(orbit))
        self.assertEqual(tuple(rows[0]), TRAJECTORY_CSV_COLUMNS)
        self.assertEqual(rows[0]["chart_id"], "U3")
        data = DiskTrajectorySerializer(orbit).data
        self.assertEqual(data["termination"], Termination.TIME_LIMIT.value)
        self.assertEqual(data["chart_log"], [{"index": 0, "chart": "U3"}])


class ReproduceServiceTest(SimpleTestCase):
    def test_worked_example_claims_hold(self):
        report = ReproduceService().run()
        self.assertEqual(report.failures, [])
        self.assertTrue(report.passed)
        self.assertEqual(glyph_count(report.svg), 4)
        data = ReproductionReportSerializer(report).data
        self.assertTrue(data["passed"])
        self.assertGreaterEqual(len(data["claims"]), 10)
