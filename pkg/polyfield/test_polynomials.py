import numpy as np
from django.test import SimpleTestCase

from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField, jacobian
from polyfield.polynomials import Axis, BivariatePoly, UnivariatePoly, evaluate, partial
from polyfield.problem import limit_field, worked_example_spec


class UnivariatePolyTest(SimpleTestCase):
    def test_trailing_zeros_are_trimmed(self):
        p = UnivariatePoly((1.0, 2.0, 0.0, 0.0))
        self.assertEqual(p.coeffs, (1.0, 2.0))
        self.assertEqual(p.degree(), 1)

    def test_zero_polynomial(self):
        zero = UnivariatePoly.zero()
        self.assertTrue(zero.is_zero())
        self.assertEqual(zero.degree(), float("-inf"))
        self.assertEqual(zero.format(), "0")
        self.assertEqual(zero.real_roots(), ())

    def test_evaluation_and_arithmetic(self):
        p = UnivariatePoly((1.0, 2.0, 3.0))
        q = UnivariatePoly((0.0, 1.0))
        self.assertEqual(p(2.0), 17.0)
        self.assertEqual((p + q).coeffs, (1.0, 3.0, 3.0))
        self.assertEqual((p - p).coeffs, ())
        self.assertEqual((p * q).coeffs, (0.0, 1.0, 2.0, 3.0))
        self.assertEqual((2 * q).coeffs, (0.0, 2.0))

    def test_derivative_and_scaled_argument(self):
        p = UnivariatePoly((1.0, 2.0, 3.0))
        self.assertEqual(p.derivative().coeffs, (2.0, 6.0))
        self.assertEqual(p.scaled_argument(2.0).coeffs, (1.0, 4.0, 12.0))

    def test_real_roots(self):
        roots = UnivariatePoly((-1.0, 0.0, 1.0)).real_roots()
        np.testing.assert_allclose(roots, (-1.0, 1.0), atol=1e-14)
        self.assertEqual(UnivariatePoly((1.0, 0.0, 1.0)).real_roots(), ())

    def test_multiple_roots_collapse(self):
        for power in (2, 3, 4):
            p = UnivariatePoly((1.0,))
            for _ in range(power):
                p = p * UnivariatePoly((-1.0, 1.0))
            roots = p.real_roots()
            self.assertEqual(len(roots), 1, (power, roots))
            self.assertAlmostEqual(roots[0], 1.0, delta=1e-9)

    def test_close_distinct_roots_are_kept(self):
        expected = (-2.0, 1.0, 1.01, 3.0, 5.0)
        p = UnivariatePoly((1.0,))
        for r in expected:
            p = p * UnivariatePoly((-r, 1.0))
        roots = p.real_roots()
        np.testing.assert_allclose(roots, expected, atol=1e-9)
        for r in roots:
            self.assertLessEqual(abs(p(r)), 1e-9 * p.magnitude(r))

    def test_double_root_next_to_simple_root(self):
        # (x - 1)^2 (x + 1)
        p = UnivariatePoly((1.0, -1.0, -1.0, 1.0))
        np.testing.assert_allclose(p.real_roots(), (-1.0, 1.0), atol=1e-9)

    def test_format(self):
        self.assertEqual(UnivariatePoly((1.0, -1.0, 0.0, 2.5)).format(), "2.5*x^3 - x + 1")
        self.assertEqual(UnivariatePoly((0.0, 0.0, -1.0)).format("u"), "-u^2")


class BivariatePolyTest(SimpleTestCase):
    def setUp(self):
        # 1 + 2 u v - 3 v^2
        self.p = BivariatePoly({(0, 0): 1.0, (1, 1): 2.0, (0, 2): -3.0})

    def test_negative_exponent(self):
        with self.assertRaises(ValueError):
            BivariatePoly({(-1, 0): 1.0})

    def test_zero_terms_are_dropped(self):
        p = BivariatePoly({(1, 0): 1.0, (0, 1): 0.0})
        self.assertEqual(dict(p.terms), {(1, 0): 1.0})
        self.assertEqual((self.p - self.p).total_degree, float("-inf"))

    def test_degree_and_coefficient(self):
        self.assertEqual(self.p.total_degree, 2)
        self.assertEqual(self.p.coefficient(1, 1), 2.0)
        self.assertEqual(self.p.coefficient(2, 0), 0.0)

    def test_evaluation_is_vectorised(self):
        u = np.array([0.0, 1.0, 2.0])
        v = np.array([1.0, 1.0, -1.0])
        np.testing.assert_allclose(self.p(u, v), [-2.0, 0.0, -6.0])
        self.assertEqual(float(self.p(1.0, 1.0)), 0.0)

    def test_product(self):
        u, v = BivariatePoly.u(), BivariatePoly.v()
        product = (u + v) * (u - v)
        self.assertEqual(product, BivariatePoly({(2, 0): 1.0, (0, 2): -1.0}))

    def test_partials(self):
        self.assertEqual(self.p.partial(Axis.U), BivariatePoly({(0, 1): 2.0}))
        self.assertEqual(
            self.p.partial(Axis.V), BivariatePoly({(1, 0): 2.0, (0, 1): -6.0})
        )

    def test_restrict(self):
        # v = 2: 1 + 4 u - 12
        self.assertEqual(self.p.restrict(Axis.V, 2.0).coeffs, (-11.0, 4.0))
        # u = 0: 1 - 3 v^2
        self.assertEqual(self.p.restrict(Axis.U, 0.0).coeffs, (1.0, 0.0, -3.0))

    def test_json(self):
        data = self.p.to_json()
        self.assertEqual(data, {"0,0": 1.0, "0,2": -3.0, "1,1": 2.0})
        self.assertEqual(BivariatePoly.from_json(data), self.p)

    def test_format(self):
        self.assertEqual(self.p.format(), "2*u*v - 3*v^2 + 1")
        self.assertEqual(self.p.format(("x", "y")), "2*x*y - 3*y^2 + 1")


class PlanarFieldTest(SimpleTestCase):
    def test_degree_below_one(self):
        with self.assertRaises(DomainError):
            PlanarField(BivariatePoly.constant(1.0), BivariatePoly.zero())

    def test_linear(self):
        X = PlanarField.linear(1.0, 2.0, 3.0, 4.0)
        self.assertEqual(X.d, 1)
        np.testing.assert_allclose(X(1.0, 1.0), [3.0, 7.0])
        np.testing.assert_allclose(X.jacobian(5.0, -2.0), [[1.0, 2.0], [3.0, 4.0]])

    def test_worked_example_limit_field(self):
        X = limit_field(worked_example_spec())
        self.assertEqual(X.d, 2)
        self.assertEqual(X.format(), ("-u^2 + v^2 - u", "u^2 + v^2 + v"))
        np.testing.assert_allclose(X.jacobian(0.0, 0.0), [[-1.0, 0.0], [0.0, 1.0]])

    def test_jacobian_matches_finite_differences(self):
        rng = np.random.default_rng(7)
        h = 1e-6
        for _ in range(100):
            terms = {
                (i, j): rng.normal()
                for i in range(4)
                for j in range(4 - i)
                if rng.random() < 0.6
            }
            terms[(1, 1)] = 1.0
            X = PlanarField(
                BivariatePoly(terms),
                BivariatePoly({key: -c for key, c in terms.items()}) + BivariatePoly.u(),
            )
            u, v = rng.uniform(-1.0, 1.0, size=2)
            numeric = np.column_stack(
                [
                    (X(u + h, v) - X(u - h, v)) / (2 * h),
                    (X(u, v + h) - X(u, v - h)) / (2 * h),
                ]
            )
            np.testing.assert_allclose(X.jacobian(u, v), numeric, atol=1e-6)


class FunctionalHelpersTest(SimpleTestCase):
    def setUp(self):
        self.X = limit_field(worked_example_spec())

    def test_evaluate(self):
        self.assertEqual(evaluate(self.X.P, 0.0, 0.0), 0.0)
        self.assertEqual(evaluate(self.X.P, 1.0, 1.0), -1.0)
        self.assertEqual(evaluate(self.X.Q, 1.0, 1.0), 3.0)

    def test_partial_and_jacobian(self):
        self.assertEqual(partial(self.X.P, Axis.V), BivariatePoly({(0, 1): 2.0}))
        np.testing.assert_allclose(
            jacobian(self.X, 1.0, 1.0), [[-3.0, 2.0], [2.0, 3.0]]
        )
