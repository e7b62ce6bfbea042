import numpy as np
from django.test import SimpleTestCase

from compactify.charts import Chart, compactify, equator_poly
from compactify.serializers import CompactifiedFieldSerializer, charts_listing
from compactify.sphere import (
    central_projection,
    chart_point_to_disk,
    chart_to_plane,
    chart_to_sphere,
    disk_to_chart,
    plane_to_chart,
    select_chart,
    sphere_to_chart,
)
from polyfield.exceptions import CompactificationError, DomainError
from polyfield.fields import PlanarField
from polyfield.polynomials import BivariatePoly, UnivariatePoly
from polyfield.problem import limit_field, worked_example_spec


def random_field(rng, max_degree=4):
    d = int(rng.integers(1, max_degree + 1))
    while True:
        P, Q = ({
            (i, j): float(rng.normal())
            for i in range(d + 1)
            for j in range(d + 1 - i)
            if rng.random() < 0.7
        } for _ in range(2))
        X = PlanarField(BivariatePoly(P), BivariatePoly(Q))
        if X.P.total_degree >= 1 or X.Q.total_degree >= 1:
            return X


class WorkedExampleChartsTest(SimpleTestCase):
    def setUp(self):
        self.cf = compactify(limit_field(worked_example_spec()))

    def test_u1_system_is_coefficient_exact(self):
        """U1 of (-u^2+v^2-u, v^2+u^2+v)"""
        system = self.cf[Chart.U1]
        self.assertEqual(
            system.Fx,
            BivariatePoly({(3, 0): -1, (2, 0): 1, (1, 0): 1, (1, 1): 2, (0, 0): 1}),
        )
        self.assertEqual(
            system.Fy, BivariatePoly({(0, 2): 1, (0, 1): 1, (2, 1): -1})
        )

    def test_u2_system_is_coefficient_exact(self):
        system = self.cf[Chart.U2]
        self.assertEqual(
            system.Fx,
            BivariatePoly(
                {(3, 0): -1, (2, 0): -1, (1, 0): -1, (1, 1): -2, (0, 0): 1}
            ),
        )
        self.assertEqual(
            system.Fy, BivariatePoly({(0, 2): -1, (0, 1): -1, (2, 1): -1})
        )

    def test_u3_is_the_source_field(self):
        self.assertEqual(self.cf[Chart.U3].Fx, self.cf.source.P)
        self.assertEqual(self.cf[Chart.U3].Fy, self.cf.source.Q)

    def test_v_charts_flip_sign_for_even_degree(self):
        for chart in (Chart.U1, Chart.U2, Chart.U3):
            self.assertEqual(self.cf[chart.antipode].Fx, -self.cf[chart].Fx)
            self.assertEqual(self.cf[chart.antipode].Fy, -self.cf[chart].Fy)

    def test_equator_polynomials(self):
        self.assertEqual(
            equator_poly(self.cf, Chart.U1), UnivariatePoly((1, 1, 1, -1))
        )
        self.assertEqual(
            equator_poly(self.cf, Chart.U2), UnivariatePoly((1, -1, -1, -1))
        )

    def test_equator_poly_rejects_u3(self):
        with self.assertRaises(DomainError):
            equator_poly(self.cf, Chart.U3)

    def test_listing_names_every_chart(self):
        listing = charts_listing(self.cf)
        self.assertIn("U1: x' = -x^3 + x^2 + 2*x*y + x + 1", listing)
        self.assertIn("U2: x' = -x^3 - x^2 - 2*x*y - x + 1", listing)
        self.assertIn("V3: y' = ", listing)

    def test_serializer_layout(self):
        data = CompactifiedFieldSerializer(self.cf).data
        self.assertEqual(data["d"], 2)
        self.assertEqual(set(data["charts"]), {c.value for c in Chart})
        self.assertEqual(data["charts"]["U1"]["Fx"]["3,0"], -1.0)


class LinearFieldChartsTest(SimpleTestCase):
    def setUp(self):
        self.cf = compactify(PlanarField.linear(-1.0, 0.0, 0.0, -1.0))

    def test_u1_system(self):
        self.assertTrue(self.cf[Chart.U1].Fx.is_zero())
        self.assertEqual(self.cf[Chart.U1].Fy, BivariatePoly.v())

    def test_equator_polynomial_vanishes(self):
        self.assertTrue(equator_poly(self.cf, Chart.U1).is_zero())

    def test_v_charts_equal_u_charts_for_odd_degree(self):
        self.assertEqual(self.cf[Chart.V2].Fy, self.cf[Chart.U2].Fy)


class CompactifyPropertiesTest(SimpleTestCase):
    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_padding_rejects_monomials_above_d(self):
        X = PlanarField(BivariatePoly({(3, 0): 1.0}), BivariatePoly.v())
        with self.assertRaises(CompactificationError):
            compactify(X, d=2)

    def test_polynomiality_of_expansion(self):
        for _ in range(1000):
            X = random_field(self.rng)
            cf = compactify(X)
            for chart in Chart:
                for poly in cf[chart].components:
                    self.assertTrue(all(i >= 0 and j >= 0 for i, j in poly.terms))
                    self.assertLessEqual(poly.total_degree, X.d + 1)

    def test_pushforward_conjugacy_u1(self):
        """y^(d-1) times the pushed-forward field is the U1 system"""
        for _ in range(100):
            X = random_field(self.rng)
            cf = compactify(X)
            x, y = self.rng.uniform(-2, 2), self.rng.uniform(0.2, 2)
            u, v = 1.0 / y, x / y
            P, Q = X(u, v)
            xdot = (Q * u - v * P) / u**2
            ydot = -P / u**2
            expected = np.array([xdot, ydot]) * y ** (cf.d - 1)
            np.testing.assert_allclose(
                cf[Chart.U1](x, y), expected, rtol=1e-9, atol=1e-9
            )

    def test_pushforward_conjugacy_u2(self):
        for _ in range(100):
            X = random_field(self.rng)
            cf = compactify(X)
            x, y = self.rng.uniform(-2, 2), self.rng.uniform(0.2, 2)
            u, v = x / y, 1.0 / y
            P, Q = X(u, v)
            xdot = (P * v - u * Q) / v**2
            ydot = -Q / v**2
            expected = np.array([xdot, ydot]) * y ** (cf.d - 1)
            np.testing.assert_allclose(
                cf[Chart.U2](x, y), expected, rtol=1e-9, atol=1e-9
            )

    def test_u3_is_coefficient_identical(self):
        for _ in range(100):
            X = random_field(self.rng)
            cf = compactify(X)
            self.assertEqual(cf[Chart.U3].Fx, X.P)
            self.assertEqual(cf[Chart.U3].Fy, X.Q)

    def test_difference_needs_equal_degree(self):
        a = compactify(PlanarField.linear(-1.0, 0.0, 0.0, -1.0))
        b = compactify(limit_field(worked_example_spec()))
        with self.assertRaises(DomainError):
            a - b


class SphereMapsTest(SimpleTestCase):
    def test_central_projection(self):
        np.testing.assert_allclose(central_projection(0, 0), [0, 0, 1])
        np.testing.assert_allclose(
            central_projection(1, 0), [1 / np.sqrt(2), 0, 1 / np.sqrt(2)]
        )
        np.testing.assert_allclose(
            central_projection(3, 4), np.array([3, 4, 1]) / np.sqrt(26)
        )

    def test_chart_origins_on_the_disk(self):
        self.assertEqual(chart_point_to_disk(Chart.U3, 0, 0), (0.0, 0.0))
        self.assertEqual(chart_point_to_disk(Chart.U1, 0, 0), (1.0, 0.0))
        self.assertEqual(chart_point_to_disk(Chart.U2, 0, 0), (0.0, 1.0))
        self.assertEqual(chart_point_to_disk(Chart.V1, 0, 0), (-1.0, 0.0))

    def test_lower_hemisphere_is_rejected(self):
        with self.assertRaises(DomainError):
            chart_point_to_disk(Chart.U1, 0.3, -0.5)
        with self.assertRaises(DomainError):
            chart_point_to_disk(Chart.V3, 0.0, 0.0)

    def test_v1_upper_hemisphere_has_negative_y(self):
        p, q = chart_point_to_disk(Chart.V1, 0.5, -0.2)
        self.assertLess(p, 0.0)

    def test_round_trip_through_every_chart(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            u, v = rng.uniform(-10, 10, size=2)
            point = central_projection(u, v)
            for chart in Chart:
                if point[chart.axis] * chart.sign <= 1e-3:
                    continue
                x, y = plane_to_chart(chart, u, v)
                back = chart_to_plane(chart, x, y)
                np.testing.assert_allclose(back, (u, v), rtol=1e-10, atol=1e-12)

    def test_sphere_chart_inverse(self):
        point = chart_to_sphere(Chart.V2, 0.4, -0.7)
        self.assertAlmostEqual(float(np.linalg.norm(point)), 1.0, places=14)
        np.testing.assert_allclose(sphere_to_chart(Chart.V2, point), (0.4, -0.7))

    def test_select_chart_uses_dominant_component(self):
        self.assertEqual(select_chart([0.1, -0.9, 0.4]), Chart.V2)
        self.assertEqual(select_chart([0.1, 0.2, 0.97]), Chart.U3)

    def test_disk_to_chart(self):
        chart, x, y = disk_to_chart(0.0, 0.0)
        self.assertEqual((chart, x, y), (Chart.U3, 0.0, 0.0))
        chart, x, y = disk_to_chart(1.0, 0.0)
        self.assertEqual(chart, Chart.U1)
        self.assertAlmostEqual(y, 0.0)
