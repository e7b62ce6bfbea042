from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from c1norm.norms import c1_norm
from compactify.charts import compactify
from polyfield.exceptions import DomainError
from polyfield.polynomials import UnivariatePoly
from polyfield.problem import limit_field, worked_example_spec
from reduction.moments import ManifoldMode, moments, reduced_field
from reduction.serializers import CONVERGENCE_CSV_COLUMNS, convergence_rows
from reduction.services.convergence_service import (
    ConvergenceService,
    convergence_study,
)
from spectral.eigen import SpectralResult, spectral_result
from spectral.grid import GridFunction


def coefficient_gap(a, b) -> float:
    return max((abs(c) for c in (a - b).terms.values()), default=0.0)


def cosine_bump(n=257):
    return GridFunction.from_callable(n, lambda x: 1.0 + 0.1 * np.cos(np.pi * x))


def synthetic_result(phi, lambda2=1.0, beta=1.0):
    return SpectralResult(
        eps=1.0,
        mu=(lambda2,),
        phi=phi,
        lambdaA=tuple(sorted((lambda2, beta))),
        beta=beta,
        tau=1.0,
    )


class MomentsTest(SimpleTestCase):
    def test_constant_eigenfunction(self):
        table = moments(GridFunction.constant(64, 1.0), 4)
        np.testing.assert_allclose(table.m, 1.0, atol=1e-14)
        self.assertEqual(len(table.m), 5)
        self.assertEqual(table.phi0, 1.0)

    def test_cosine_bump(self):
        table = moments(cosine_bump(), 2)
        self.assertAlmostEqual(table.m[0], 1.0, places=12)
        self.assertAlmostEqual(table.m[1], 1.005, places=12)
        self.assertAlmostEqual(table.m[2], 1.015, places=12)
        self.assertAlmostEqual(table.phi0, 1.1)

    def test_first_moment_below_norm(self):
        spec = worked_example_spec()
        for diffusion in ((1.0,), (1.0, 1.0)):
            phi = spectral_result(
                replace(spec, diffusion=UnivariatePoly(diffusion)),
                1e-1,
                128,
            ).phi
            self.assertLessEqual(moments(phi, 2).m[0], phi.l2_norm() + 1e-10)

    def test_weighting_needs_enough_moments(self):
        with self.assertRaises(DomainError):
            moments(GridFunction.constant(64, 1.0), 1).weighted(UnivariatePoly((0, 0, 1)))
        with self.assertRaises(DomainError):
            moments(GridFunction.constant(64, 1.0), -1)


class ReducedFieldTest(SimpleTestCase):
    def setUp(self):
        self.spec = worked_example_spec()
        self.X0 = limit_field(self.spec)

    def test_constant_eigenfunction_gives_the_limit_field(self):
        X = reduced_field(self.spec, synthetic_result(GridFunction.constant(64, 1.0)))
        self.assertLess(coefficient_gap(X.P, self.X0.P), 1e-12)
        self.assertLess(coefficient_gap(X.Q, self.X0.Q), 1e-12)

    def test_constant_diffusion_collapses_for_every_eps(self):
        for eps in (1e-1, 1e-2, 1e-3):
            X = reduced_field(self.spec, spectral_result(self.spec, eps, 256))
            self.assertLess(coefficient_gap(X.P, self.X0.P), 1e-8)
            self.assertLess(coefficient_gap(X.Q, self.X0.Q), 1e-8)

    def test_cosine_bump_rescales_coefficients(self):
        X = reduced_field(self.spec, synthetic_result(cosine_bump()))
        self.assertAlmostEqual(X.P.coefficient(2, 0), -1.015, places=12)
        self.assertAlmostEqual(X.P.coefficient(1, 0), -1.0, places=12)
        self.assertAlmostEqual(X.P.coefficient(0, 2), 1.1, places=12)
        self.assertAlmostEqual(X.Q.coefficient(2, 0), 1.21, places=12)
        self.assertEqual(X.Q.coefficient(0, 1), 1.0)

    def test_degree_never_grows(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            phi = GridFunction(64, 1.0 + 0.2 * rng.normal(size=64))
            X = reduced_field(self.spec, synthetic_result(phi, float(rng.uniform(0.5, 2))))
            self.assertLessEqual(X.d, self.X0.d)

    def test_unknown_manifold_mode(self):
        result = synthetic_result(GridFunction.constant(64, 1.0))
        with self.assertRaises(DomainError):
            reduced_field(self.spec, result, manifold_mode="graph")
        X = reduced_field(self.spec, result, manifold_mode=ManifoldMode.ZERO)
        self.assertLess(coefficient_gap(X.P, self.X0.P), 1e-12)


class ConvergenceStudyTest(SimpleTestCase):
    def setUp(self):
        self.spec = worked_example_spec()

    def test_constant_diffusion_distances_vanish(self):
        rows = convergence_study(self.spec, [1e-1, 1e-2, 1e-3], n=128, grid_n=32)
        self.assertEqual([row.eps for row in rows], [1e-1, 1e-2, 1e-3])
        for row in rows:
            self.assertLess(row.c1_distance, 1e-7)
            self.assertAlmostEqual(row.lambda2_eps, 1.0, delta=1e-10)
            self.assertAlmostEqual(row.tau_eps, 1.0 / row.eps)
        self.assertLess(rows[-1].sup_wperp_h1, rows[0].sup_wperp_h1)

    def test_nonconstant_diffusion_is_nonincreasing(self):
        spec = replace(self.spec, diffusion=UnivariatePoly((1.0, 1.0)))
        rows = convergence_study(spec, [1e-1, 1e-2, 1e-3], n=128, grid_n=32)
        distances = [row.c1_distance for row in rows]
        for a, b in zip(distances, distances[1:]):
            self.assertLessEqual(b, a + 1e-9)

    def test_grid_doubling_is_stable(self):
        coarse = ConvergenceService(self.spec, n=128, grid_n=32).row(1e-2)
        fine = ConvergenceService(self.spec, n=128, grid_n=64).row(1e-2)
        a, b = coarse.c1_distance, fine.c1_distance
        self.assertLessEqual(abs(a - b), 0.05 * max(a, b) + 1e-9)

    def test_distance_matches_norm_of_difference(self):
        service = ConvergenceService(self.spec, n=128, grid_n=32)
        X = reduced_field(self.spec, spectral_result(self.spec, 1e-2, 128))
        difference = compactify(X, d=service.limit.d) - service.limit
        self.assertEqual(service.row(1e-2).c1_distance, c1_norm(difference, 32).overall)

    def test_single_eps_gives_one_row(self):
        rows = convergence_study(self.spec, [1e-2], n=64, grid_n=32)
        self.assertEqual(len(rows), 1)
        table = convergence_rows(rows)
        self.assertEqual(tuple(table[0]), CONVERGENCE_CSV_COLUMNS)

    def test_eps_list_must_descend(self):
        with self.assertRaises(DomainError):
            convergence_study(self.spec, [1e-3, 1e-2], n=64)
        with self.assertRaises(DomainError):
            convergence_study(self.spec, [], n=64)
