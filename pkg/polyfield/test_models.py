from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, TestCase

from polyfield.models import Problem
from polyfield.polynomials import UnivariatePoly
from polyfield.problem import ProblemSpec, limit_field, worked_example_spec


def quadratic(c0=0.0, c1=0.0, c2=1.0) -> UnivariatePoly:
    return UnivariatePoly((c0, c1, c2))


class ProblemSpecTest(SimpleTestCase):
    def assert_rejected(self, spec: ProblemSpec, key: str, fragment: str):
        with self.assertRaises(ValidationError) as raised:
            spec.clean()
        errors = raised.exception.message_dict
        self.assertIn(key, errors)
        self.assertIn(fragment, " ".join(errors[key]))

    def test_worked_example_is_valid(self):
        spec = worked_example_spec()
        spec.clean()
        self.assertEqual(spec.degree, 2)
        self.assertEqual(spec.field_degree, 2)
        self.assertFalse(spec.is_linear)

    def test_damping_must_be_positive(self):
        spec = ProblemSpec(lam=0.0, beta=-1.0, f2=quadratic())
        self.assert_rejected(spec, "lambda", "lambda > 0 fails")
        self.assert_rejected(spec, "beta", "beta > 0 fails")

    def test_degree_below_two(self):
        spec = ProblemSpec(lam=1.0, beta=1.0, f2=UnivariatePoly((0.0, 1.0)))
        self.assert_rejected(spec, "degree", "d - 2 >= 0 fails: d=1")

    def test_linear_problem_reports_minus_infinity(self):
        self.assert_rejected(ProblemSpec(lam=1.0, beta=1.0), "degree", "d=-inf")

    def test_linear_problem_with_relaxed_degrees(self):
        spec = ProblemSpec(lam=1.0, beta=2.0, relaxed_degrees=True)
        spec.clean()
        self.assertEqual(spec.field_degree, 1)
        self.assertEqual(limit_field(spec).format(), ("-u", "-2*v"))

    def test_g1_degree_condition(self):
        spec = ProblemSpec(lam=1.0, beta=1.0, g1=quadratic())
        self.assert_rejected(spec, "g1", "d - 1 >= deg g1 fails: d=2, deg g1=2")

    def test_relaxed_degree_needs_vanishing_constant(self):
        spec = ProblemSpec(lam=1.0, beta=1.0, g1=quadratic(c0=1.0), relaxed_degrees=True)
        self.assert_rejected(spec, "g1", "g1(0) != 0")
        self.assert_rejected(spec.with_relaxed_degrees(False), "g1", "deg g1=2")
        ProblemSpec(lam=1.0, beta=1.0, g1=quadratic(), relaxed_degrees=True).clean()

    def test_diffusion_must_be_positive(self):
        spec = ProblemSpec(
            lam=1.0,
            beta=1.0,
            f2=quadratic(),
            diffusion=UnivariatePoly((1.0, -2.0)),
        )
        self.assert_rejected(spec, "diffusion", "a(x) > 0 on [0, 1] fails")

    def test_tau_scales_with_eps(self):
        spec = ProblemSpec(
            lam=1.0, beta=1.0, f2=quadratic(), diffusion=UnivariatePoly((2.0, 1.0))
        )
        self.assertAlmostEqual(spec.tau(0.1), 20.0)

    def test_dict_layout(self):
        data = worked_example_spec().to_dict()
        self.assertEqual(data["lambda"], 1.0)
        self.assertEqual(data["g2"], [0.0, 2.0, 1.0])
        self.assertEqual(ProblemSpec.from_dict(data), worked_example_spec())


class ProblemModelTest(TestCase):
    def setUp(self):
        self.problem = Problem.objects.create(
            name="Worked example",
            lam=1.0,
            beta=1.0,
            f1=[0, 0, -1],
            g1=[0, 0, 1],
            f2=[0, 0, 1],
            g2=[0, 2, 1],
            relaxed_degrees=True,
        )

    def test_str(self):
        self.assertEqual(str(self.problem), "Worked example (lambda=1, beta=1)")

    def test_to_spec(self):
        self.assertEqual(self.problem.to_spec(), worked_example_spec())
        self.problem.full_clean()

    def test_clean_rejects_non_numeric_coefficients(self):
        self.problem.g2 = [0, "two", 1]
        with self.assertRaises(ValidationError) as raised:
            self.problem.clean()
        self.assertIn("g2", raised.exception.message_dict)

    def test_clean_runs_problem_validation(self):
        self.problem.relaxed_degrees = False
        with self.assertRaises(ValidationError) as raised:
            self.problem.clean()
        self.assertIn("f1", raised.exception.message_dict)
