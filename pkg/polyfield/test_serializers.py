from django.test import SimpleTestCase, TestCase

from polyfield.models import Problem
from polyfield.problem import limit_field, worked_example_spec
from polyfield.serializers import (
    PlanarFieldSerializer,
    ProblemListSerializer,
    ProblemSerializer,
    ProblemSpecSerializer,
)

WORKED_EXAMPLE = {
    "lambda": 1.0,
    "beta": 1.0,
    "f1": [0, 0, -1],
    "g1": [0, 0, 1],
    "f2": [0, 0, 1],
    "g2": [0, 2, 1],
    "relaxed_degrees": True,
}


class ProblemSpecSerializerTest(SimpleTestCase):
    def test_valid_data_builds_spec(self):
        serializer = ProblemSpecSerializer(data=WORKED_EXAMPLE)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), worked_example_spec())

    def test_missing_beta(self):
        data = {key: value for key, value in WORKED_EXAMPLE.items() if key != "beta"}
        serializer = ProblemSpecSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn("beta", serializer.errors)

    def test_problem_errors_keep_their_key(self):
        serializer = ProblemSpecSerializer(data={**WORKED_EXAMPLE, "lambda": -1.0})
        self.assertFalse(serializer.is_valid())
        self.assertIn("lambda", serializer.errors)

    def test_defaults(self):
        serializer = ProblemSpecSerializer(
            data={"lambda": 1.0, "beta": 1.0, "f2": [0, 0, 1]}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        spec = serializer.save()
        self.assertEqual(spec.diffusion.coeffs, (1.0,))
        self.assertFalse(spec.relaxed_degrees)

    def test_representation_uses_lambda_key(self):
        data = ProblemSpecSerializer(worked_example_spec()).data
        self.assertEqual(data["lambda"], 1.0)
        self.assertNotIn("lam", data)


class PlanarFieldSerializerTest(SimpleTestCase):
    def test_limit_field(self):
        data = PlanarFieldSerializer(limit_field(worked_example_spec())).data
        self.assertEqual(data["d"], 2)
        self.assertEqual(data["P"], {"1,0": -1.0, "2,0": -1.0, "0,2": 1.0})
        self.assertEqual(data["text"], ["-u^2 + v^2 - u", "u^2 + v^2 + v"])


class ProblemSerializerTest(TestCase):
    def setUp(self):
        self.problem = Problem.objects.create(name="Worked example", lam=1.0, beta=1.0,
                                              f1=[0, 0, -1], g1=[0, 0, 1],
                                              f2=[0, 0, 1], g2=[0, 2, 1],
                                              relaxed_degrees=True)

    def test_problem_serializer(self):
        data = ProblemSerializer(self.problem).data
        self.assertEqual(data["name"], "Worked example")
        self.assertEqual(data["lambda"], 1.0)
        self.assertEqual(data["g2"], [0, 2, 1])

    def test_list_serializer(self):
        data = ProblemListSerializer(self.problem).data
        self.assertEqual(
            set(data), {"id", "name", "lambda", "beta", "relaxed_degrees"}
        )

    def test_create_validates_degrees(self):
        serializer = ProblemSerializer(
            data={**WORKED_EXAMPLE, "name": "Strict", "relaxed_degrees": False}
        )
        self.assertFalse(serializer.is_valid())
        self.assertIn("f1", serializer.errors)

    def test_partial_update_keeps_stored_fields(self):
        serializer = ProblemSerializer(self.problem, data={"beta": 2.0}, partial=True)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        problem = serializer.save()
        self.assertEqual(problem.beta, 2.0)
        self.assertEqual(problem.to_spec().g2.coeffs, (0.0, 2.0, 1.0))
