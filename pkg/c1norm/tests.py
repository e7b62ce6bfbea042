import math

import numpy as np
from django.test import SimpleTestCase

from c1norm.norms import c1_distance, c1_norm, parse_radius, spectral_norm
from c1norm.serializers import C1ReportSerializer
from compactify.charts import Chart, compactify
from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField
from polyfield.polynomials import BivariatePoly
from polyfield.problem import limit_field, worked_example_spec


def random_field(rng, d):
    P, Q = (
        BivariatePoly(
            {
                (i, j): float(rng.normal())
                for i in range(d + 1)
                for j in range(d + 1 - i)
            }
        )
        for _ in range(2)
    )
    return compactify(PlanarField(P, Q), d=d)


class C1NormTest(SimpleTestCase):
    def setUp(self):
        self.cf = compactify(limit_field(worked_example_spec()))

    def test_zero_field(self):
        report = c1_norm(self.cf - self.cf)
        self.assertEqual(report.overall, 0.0)
        for sup in report.per_chart.values():
            self.assertEqual(sup.sup_value, 0.0)
            self.assertEqual(sup.sup_derivative, 0.0)

    def test_linear_sink_in_u3(self):
        cf = compactify(PlanarField.linear(-1, 0, 0, -1))
        sup = c1_norm(cf, grid_n=32).per_chart[Chart.U3]
        self.assertAlmostEqual(sup.sup_value, 1.0, places=12)
        self.assertAlmostEqual(sup.sup_derivative, 1.0, places=12)
        self.assertAlmostEqual(math.hypot(*sup.argmax_value), 1.0, places=12)

    def test_refinement_agrees_within_two_percent(self):
        coarse = c1_norm(self.cf, grid_n=64).overall
        fine = c1_norm(self.cf, grid_n=256).overall
        self.assertLessEqual(coarse, fine)
        self.assertLess((fine - coarse) / fine, 0.02)

    def test_refinement_never_decreases(self):
        previous = 0.0
        for grid_n in (32, 64, 128):
            value = c1_norm(self.cf, grid_n=grid_n, radius="sqrt2").overall
            self.assertGreaterEqual(value, previous)
            previous = value

    def test_overall_is_worst_chart(self):
        report = c1_norm(self.cf)
        self.assertEqual(
            report.overall, max(s.worst for s in report.per_chart.values())
        )

    def test_parameters_are_validated(self):
        with self.assertRaises(DomainError):
            c1_norm(self.cf, grid_n=16)
        with self.assertRaises(DomainError):
            c1_norm(self.cf, radius=1.5)
        self.assertEqual(parse_radius("sqrt2"), math.sqrt(2.0))
        self.assertEqual(parse_radius(math.sqrt(2.0)), math.sqrt(2.0))

    def test_spectral_norm_matches_svd(self):
        rng = np.random.default_rng(5)
        J = rng.normal(size=(100, 2, 2))
        np.testing.assert_allclose(
            spectral_norm(J), np.linalg.norm(J, ord=2, axis=(-2, -1)), rtol=1e-12
        )

    def test_serializer(self):
        data = C1ReportSerializer(c1_norm(self.cf, grid_n=32)).data
        self.assertEqual(set(data["per_chart"]), {c.value for c in Chart})
        self.assertEqual(len(data["per_chart"]["U1"]["argmax_value"]), 2)


class C1DistanceTest(SimpleTestCase):
    def setUp(self):
        self.rng = np.random.default_rng(17)

    def test_distance_to_itself_is_zero(self):
        cf = compactify(limit_field(worked_example_spec()))
        self.assertEqual(c1_distance(cf, cf).overall, 0.0)

    def test_symmetric(self):
        for _ in range(20):
            a, b = random_field(self.rng, 2), random_field(self.rng, 2)
            self.assertEqual(
                c1_distance(a, b, grid_n=32).overall,
                c1_distance(b, a, grid_n=32).overall,
            )

    def test_incompatible_degrees(self):
        with self.assertRaises(DomainError):
            c1_distance(random_field(self.rng, 2), random_field(self.rng, 3))

    def test_norm_axioms(self):
        for _ in range(100):
            d = int(self.rng.integers(1, 4))
            a, b, c = (random_field(self.rng, d) for _ in range(3))
            ab = c1_distance(a, b, grid_n=32).overall
            bc = c1_distance(b, c, grid_n=32).overall
            ac = c1_distance(a, c, grid_n=32).overall
            self.assertGreaterEqual(ab, 0.0)
            self.assertLessEqual(ac, (ab + bc) * (1 + 1e-12))

    def test_homogeneity(self):
        for _ in range(100):
            cf = random_field(self.rng, int(self.rng.integers(1, 4)))
            c = float(self.rng.uniform(0.1, 10.0))
            base = c1_norm(cf, grid_n=32).overall
            self.assertAlmostEqual(
                c1_norm(cf.scaled(c), grid_n=32).overall / base, c, delta=1e-10 * c
            )
