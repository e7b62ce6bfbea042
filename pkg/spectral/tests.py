import math
from unittest import mock

import numpy as np
from django.test import SimpleTestCase
from scipy import linalg

from polyfield.exceptions import DomainError, EigenSolveError
from polyfield.polynomials import UnivariatePoly
from polyfield.problem import ProblemSpec
from spectral.eigen import eigen_lowest, spectral_result
from spectral.grid import GridFunction
from spectral.operators import TridiagonalOperator, assemble_B, flux_matrix
from spectral.serializers import PHI_CSV_COLUMNS, SpectralResultSerializer, phi_rows

def diffusion_spec(lam=1.0, beta=1.0, diffusion=(1.0,)):
    return ProblemSpec(lam=lam, beta=beta, diffusion=UnivariatePoly(tuple(diffusion)))


def random_tridiagonal(rng, n):
    return TridiagonalOperator(rng.normal(size=n), rng.normal(size=n - 1))


class GridFunctionTest(SimpleTestCase):
    def test_resolution_bound(self):
        with self.assertRaises(DomainError):
            GridFunction.constant(32, 1.0)
        with self.assertRaises(DomainError):
            GridFunction(64, np.ones(65))

    def test_trapezoid_quadrature(self):
        f = GridFunction.from_callable(129, lambda x: np.cos(np.pi * x) + 1.0)
        self.assertAlmostEqual(f.mean(), 1.0, places=12)
        self.assertAlmostEqual(GridFunction.constant(64, 1.0).l2_norm(), 1.0, places=14)
        self.assertAlmostEqual(GridFunction.constant(64, 3.0).h1_norm(), 3.0, places=12)


class AssembleTest(SimpleTestCase):
    def test_flux_rows_sum_to_zero(self):
        S = flux_matrix(diffusion_spec(lam=0.0), 1.0, 64)
        np.testing.assert_allclose(S.matvec(np.ones(64)), 0.0, atol=1e-9)
        S = flux_matrix(diffusion_spec(diffusion=(1.0, 1.0)), 0.1, 100)
        np.testing.assert_allclose(S.matvec(np.ones(100)), 0.0, atol=1e-7)

    def test_symmetric_positive_definite(self):
        T = assemble_B(diffusion_spec(diffusion=(1.0, 1.0)), 0.5, 64)
        dense = T.dense()
        np.testing.assert_array_equal(dense, dense.T)
        self.assertGreater(np.linalg.eigvalsh(dense).min(), 0.0)

    def test_rejects_bad_inputs(self):
        with self.assertRaises(DomainError):
            assemble_B(diffusion_spec(diffusion=(-1.0, 0.5)), 1.0, 64)
        with self.assertRaises(DomainError):
            assemble_B(diffusion_spec(), 0.0, 64)
        with self.assertRaises(DomainError):
            assemble_B(diffusion_spec(), 1.0, 16)

    def test_matvec_matches_dense(self):
        T = random_tridiagonal(np.random.default_rng(1), 12)
        x = np.random.default_rng(2).normal(size=(12, 3))
        np.testing.assert_allclose(T.matvec(x), T.dense() @ x, atol=1e-12)


class EigenLowestTest(SimpleTestCase):
    def test_diagonal(self):
        values, vectors = eigen_lowest(TridiagonalOperator([3.0, 1.0, 2.0], [0.0, 0.0]), 3)
        np.testing.assert_allclose(values, [1.0, 2.0, 3.0])
        np.testing.assert_allclose(np.abs(vectors[1]), [1.0, 0.0, 0.0], atol=1e-14)

    def test_random_matrix_against_dense_solver(self):
        rng = np.random.default_rng(50)
        for _ in range(10):
            T = random_tridiagonal(rng, 50)
            values, vectors = eigen_lowest(T, 10)
            np.testing.assert_allclose(
                values, linalg.eigh(T.dense(), eigvals_only=True)[:10], atol=1e-9
            )
            np.testing.assert_allclose(vectors.T @ vectors, np.eye(10), atol=1e-8)

    def test_rejects_k_out_of_range(self):
        T = TridiagonalOperator([1.0, 2.0], [0.5])
        with self.assertRaises(DomainError):
            eigen_lowest(T, 3)
        with self.assertRaises(DomainError):
            eigen_lowest(T, 0)

    def test_bad_vectors_are_recomputed(self):
        T = random_tridiagonal(np.random.default_rng(8), 20)
        exact = linalg.eigh(T.dense(), eigvals_only=True)[:3]
        with mock.patch(
            "spectral.eigen.linalg.eigh_tridiagonal",
            return_value=(exact.copy(), np.eye(20, 3)),
        ):
            with self.assertLogs("spectral.eigen", level="WARNING"):
                values, vectors = eigen_lowest(T, 3)
        np.testing.assert_allclose(values, exact, atol=1e-9)
        residual = np.linalg.norm(T.matvec(vectors) - vectors * values, axis=0)
        self.assertTrue(np.all(residual <= 1e-8 * T.norm()))

    def test_stagnation_is_reported(self):
        T = random_tridiagonal(np.random.default_rng(9), 20)
        stuck = np.eye(20, 2)
        with mock.patch(
            "spectral.eigen.linalg.eigh_tridiagonal",
            return_value=(np.zeros(2), stuck.copy()),
        ), mock.patch(
            "spectral.eigen._inverse_iteration",
            return_value=(0.0, stuck[:, 0].copy()),
        ) as retried:
            with self.assertRaises(EigenSolveError):
                eigen_lowest(T, 2)
        self.assertEqual(retried.call_count, 5)


class ClosedFormSpectrumTest(SimpleTestCase):
    def test_constant_coefficient_neumann_spectrum(self):
        eps = 1e-2
        result = spectral_result(diffusion_spec(), eps, 2000, k=3)
        expected = [1.0 + (k * math.pi) ** 2 / eps for k in range(3)]
        for mu, exact in zip(result.mu, expected):
            self.assertLess(abs(mu - exact) / exact, 1e-3)

    def test_unit_diffusion_spectrum(self):
        result = spectral_result(diffusion_spec(), 1.0, 2000, k=4)
        for k in range(4):
            exact = 1.0 + (k * math.pi) ** 2
            self.assertLess(abs(result.mu[k] - exact) / exact, 1e-3)

    def test_ground_state_is_the_constant(self):
        for eps in (1e-1, 1e-2, 1e-3):
            result = spectral_result(diffusion_spec(), eps, 256)
            self.assertAlmostEqual(result.mu[0], 1.0, delta=1e-10)
            self.assertLess(np.max(np.abs(result.phi.values - 1.0)), 1e-8)
            self.assertAlmostEqual(result.phi.l2_norm(), 1.0, delta=1e-10)


class SpectralResultTest(SimpleTestCase):
    def test_beta_is_merged(self):
        result = spectral_result(diffusion_spec(beta=1.0), 1e-2, 128)
        self.assertEqual(result.lambdaA[:2], (1.0, result.mu[0]))
        self.assertAlmostEqual(result.lambdaA[1], 1.0, delta=1e-10)
        self.assertIn(1.0, result.lambdaA)

        result = spectral_result(diffusion_spec(beta=0.5), 1e-2, 128)
        self.assertEqual(result.lambdaA[0], 0.5)
        self.assertEqual(result.lambda2, result.mu[0])

    def test_ground_state_bound_and_sign(self):
        for diffusion in ((1.0,), (1.0, 1.0), (2.0, -1.0, 0.5)):
            for eps in (1.0, 1e-1, 1e-2):
                result = spectral_result(diffusion_spec(lam=0.7, diffusion=diffusion), eps, 128)
                self.assertGreaterEqual(result.mu[0], 0.7 - 1e-10)
                self.assertGreaterEqual(result.phi.mean(), 0.0)
                self.assertTrue(all(a <= b for a, b in zip(result.mu, result.mu[1:])))

    def test_second_eigenvalue_scales_like_one_over_eps(self):
        spec = diffusion_spec(diffusion=(1.0, 1.0))
        for eps in (1e-1, 1e-2, 1e-3):
            result = spectral_result(spec, eps, 256)
            self.assertGreaterEqual(result.mu[1] * eps, math.pi**2 / 2)

    def test_grid_convergence_is_second_order(self):
        spec = diffusion_spec(diffusion=(1.0, 1.0))
        mu2 = [spectral_result(spec, 1.0, n).mu[1] for n in (64, 128, 256)]
        ratio = (mu2[0] - mu2[1]) / (mu2[1] - mu2[2])
        self.assertGreater(ratio, 4.0 / 3.0)
        self.assertLess(ratio, 12.0)

    def test_tau(self):
        result = spectral_result(diffusion_spec(diffusion=(1.0, 1.0)), 1e-2, 64)
        self.assertAlmostEqual(result.tau, 100.0)

    def test_serialization(self):
        result = spectral_result(diffusion_spec(), 1e-1, 64)
        data = SpectralResultSerializer(result).data
        self.assertEqual(data["n"], 64)
        self.assertEqual(len(data["phi"]["values"]), 64)
        self.assertEqual(len(data["mu"]), 4)
        rows = phi_rows(result)
        self.assertEqual(tuple(rows[0]), PHI_CSV_COLUMNS)
        self.assertEqual(rows[-1]["x"], 1.0)
