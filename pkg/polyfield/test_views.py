from django.contrib.auth import get_user_model
from django.test import TestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from polyfield.models import Problem


class ProblemViewSetTest(TestCase):
    def setUp(self):
        self.client = APIClient()

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
        self.admin = get_user_model().objects.create_user(
            username="admin", password="testpass", is_staff=True
        )

    def url(self, name: str) -> str:
        return reverse(f"polyfield:problem-{name}", args=[self.problem.pk])

    def test_list_is_public(self):
        response = self.client.get(reverse("polyfield:problem-list"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), 1)
        self.assertEqual(response.data[0]["name"], "Worked example")

    def test_retrieve(self):
        response = self.client.get(self.url("detail"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["lambda"], 1.0)

    def test_create_requires_staff(self):
        payload = {"name": "Other", "lambda": 2.0, "beta": 1.0, "f2": [0, 0, 1]}
        response = self.client.post(reverse("polyfield:problem-list"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)

        self.client.force_authenticate(self.admin)
        response = self.client.post(reverse("polyfield:problem-list"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(Problem.objects.count(), 2)

    def test_create_rejects_invalid_problem(self):
        self.client.force_authenticate(self.admin)
        payload = {"name": "Bad", "lambda": 1.0, "beta": 1.0, "g1": [0, 0, 1]}
        response = self.client.post(reverse("polyfield:problem-list"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("g1", response.data)

    def test_limit_field(self):
        response = self.client.get(self.url("limit-field"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["d"], 2)
        self.assertEqual(response.data["text"], ["-u^2 + v^2 - u", "u^2 + v^2 + v"])

    def test_compactification(self):
        response = self.client.get(self.url("compactification"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(
            sorted(response.data["charts"]), ["U1", "U2", "U3", "V1", "V2", "V3"]
        )

    def test_equilibria(self):
        response = self.client.get(self.url("equilibria"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data["finite"]), 2)
        self.assertEqual(len(response.data["infinite"]), 2)
        self.assertEqual(
            sorted(row["classification"] for row in response.data["finite"]),
            ["Saddle", "StableFocus"],
        )

    def test_spectrum(self):
        response = self.client.get(self.url("spectrum"), {"eps": "0.01", "n": "64"})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["n"], 64)
        self.assertAlmostEqual(response.data["lambda2"], 1.0, delta=1e-10)

    def test_bad_query_parameter(self):
        response = self.client.get(self.url("spectrum"), {"eps": "small"})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("eps", response.data)

    def test_c1_distance(self):
        response = self.client.get(
            self.url("c1-distance"), {"eps": "0.01", "n": "64", "grid_n": "32"}
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertLess(response.data["overall"], 1e-7)

    def test_portrait(self):
        response = self.client.get(self.url("portrait"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response["Content-Type"], "image/svg+xml")
        self.assertEqual(response.content.decode().count('class="equilibrium '), 4)
