import math

import numpy as np
from django.test import SimpleTestCase

from polyfield.exceptions import DomainError
from polyfield.polynomials import UnivariatePoly
from polyfield.problem import ProblemSpec, worked_example_spec
from simulate.limit_ode import integrate_limit_ode
from simulate.pde import SimState, integrate_pde
from simulate.serializers import (
    SNAPSHOT_CSV_COLUMNS,
    TRAJECTORY_CSV_COLUMNS,
    TrajectorySerializer,
    snapshot_rows,
    trajectory_rows,
)
from simulate.statistics import project, shadowing_gap, wperp_sup_h1
from spectral.eigen import spectral_result
from spectral.grid import GridFunction

FOCUS = np.array([0.419643, -0.771845])


def rough_state(n, v0=-0.1):
    return SimState(
        GridFunction.from_callable(n, lambda x: 0.1 + 0.05 * np.cos(np.pi * x)),
        v0,
        0.0,
    )


class IntegratePdeTest(SimpleTestCase):
    def setUp(self):
        self.linear = ProblemSpec(lam=1.0, beta=1.0)

    def test_linear_decay(self):
        init = SimState.constant(64, 1.0, 1.0)
        trajectory = integrate_pde(
            self.linear, 1e-2, init, T=1.0, dt=1e-4, sample_stride=1000
        )
        self.assertFalse(trajectory.blowup)
        final = trajectory.final
        self.assertAlmostEqual(final.t, 1.0)
        np.testing.assert_allclose(final.w.values, math.exp(-1.0), atol=1e-4)
        self.assertAlmostEqual(final.v, math.exp(-1.0), delta=1e-4)

    def test_constants_stay_constant(self):
        init = SimState.constant(64, 0.3, 0.0)
        trajectory = integrate_pde(self.linear, 1e-3, init, T=0.5, dt=1e-3)
        for state in trajectory:
            values = state.w.values
            self.assertLess(values.max() - values.min(), 1e-12)

    def test_mean_is_conserved_without_damping(self):
        spec = ProblemSpec(lam=0.0, beta=1.0)
        trajectory = integrate_pde(spec, 1e-1, rough_state(64), T=1.0, dt=1e-3)
        means = [state.w.mean() for state in trajectory]
        self.assertLess(max(means) - min(means), 1e-12)

    def test_sampling(self):
        trajectory = integrate_pde(
            self.linear, 1e-2, rough_state(64), T=0.1, dt=1e-3, sample_stride=10
        )
        times = trajectory.times
        self.assertEqual(len(trajectory), 11)
        self.assertTrue(np.all(np.diff(times) > 0))
        np.testing.assert_allclose(np.diff(times), 1e-2, rtol=1e-9)

    def test_worked_example_settles_on_the_focus(self):
        init = SimState.constant(64, 0.1, -0.1)
        trajectory = integrate_pde(
            worked_example_spec(), 1e-3, init, T=30.0, dt=1e-3, sample_stride=1000
        )
        self.assertFalse(trajectory.blowup)
        phi = GridFunction.constant(64, 1.0)
        u, _ = project(trajectory.final, phi)
        self.assertLess(np.linalg.norm([u, trajectory.final.v] - FOCUS), 5e-3)

    def test_blowup_is_flagged(self):
        init = SimState.constant(64, 0.0, 10.0)
        trajectory = integrate_pde(worked_example_spec(), 1e-2, init, T=5.0, dt=1e-3)
        self.assertTrue(trajectory.blowup)
        self.assertLess(trajectory.final.t, 1.0)

    def test_rejects_bad_steps(self):
        init = SimState.constant(64, 0.0, 0.0)
        with self.assertRaises(DomainError):
            integrate_pde(self.linear, 1e-2, init, T=0.0, dt=1e-3)
        with self.assertRaises(DomainError):
            integrate_pde(self.linear, 1e-2, init, T=1.0, dt=-1e-3)


class ProjectTest(SimpleTestCase):
    def setUp(self):
        self.phi = GridFunction.constant(128, 1.0)

    def test_phi_projects_onto_itself(self):
        u, wperp = project(SimState(self.phi, 0.0, 0.0), self.phi)
        self.assertAlmostEqual(u, 1.0, places=14)
        self.assertLess(np.max(np.abs(wperp.values)), 1e-14)

    def test_orthogonal_state(self):
        w = GridFunction.from_callable(128, lambda x: np.cos(np.pi * x))
        u, wperp = project(SimState(w, 0.0, 0.0), self.phi)
        self.assertAlmostEqual(u, 0.0, places=14)
        np.testing.assert_allclose(wperp.values, w.values, atol=1e-14)

    def test_split_is_recovered(self):
        phi = spectral_result(ProblemSpec(lam=1.0, beta=1.0), 1e-1, 128).phi
        z = GridFunction.from_callable(128, lambda x: x**2 - x)
        z = z - phi * z.inner(phi)
        u, wperp = project(SimState(phi * 2.0 + z, 0.0, 0.0), phi)
        self.assertAlmostEqual(u, 2.0, delta=1e-10)
        np.testing.assert_allclose(wperp.values, z.values, atol=1e-10)
        self.assertLess(abs(wperp.inner(phi)), 1e-10)

    def test_idempotent(self):
        spec = ProblemSpec(lam=1.0, beta=1.0, diffusion=UnivariatePoly((1.0, 0.5)))
        phi = spectral_result(spec, 1e-1, 128).phi
        rng = np.random.default_rng(11)
        for _ in range(100):
            scale = 10.0 ** rng.uniform(-3, 3)
            w = GridFunction(128, scale * rng.normal(size=128))
            u, wperp = project(SimState(w, 0.0, 0.0), phi)
            u2, wperp2 = project(SimState(phi * u + wperp, 0.0, 0.0), phi)
            self.assertAlmostEqual(u2, u, delta=1e-10 * scale)
            np.testing.assert_allclose(wperp2.values, wperp.values, atol=1e-10 * scale)
            self.assertLess(abs(wperp.inner(phi)), 1e-10 * scale)

    def test_grid_mismatch(self):
        with self.assertRaises(DomainError):
            project(SimState.constant(64, 1.0, 0.0), self.phi)


class HomogenizationTest(SimpleTestCase):
    def test_constant_trajectory(self):
        spec = ProblemSpec(lam=1.0, beta=1.0)
        trajectory = integrate_pde(spec, 1e-2, SimState.constant(64, 0.5, 0.1), T=1.0, dt=1e-2)
        phi = GridFunction.constant(64, 1.0)
        self.assertLess(wperp_sup_h1(trajectory, phi), 1e-12)

    def test_linear_problem_decays_fast(self):
        spec = ProblemSpec(lam=1.0, beta=1.0)
        trajectory = integrate_pde(spec, 1e-2, rough_state(64), T=0.1, dt=1e-3)
        phi = spectral_result(spec, 1e-2, 64).phi
        self.assertLess(wperp_sup_h1(trajectory, phi, window=(0.05, 0.1)), 1e-3)

    def test_large_diffusion_flattens_the_state(self):
        spec = worked_example_spec()
        values = []
        for eps in (1e-1, 1e-2, 1e-3):
            trajectory = integrate_pde(
                spec, eps, rough_state(128), T=1.0, dt=1e-3, sample_stride=10
            )
            phi = spectral_result(spec, eps, 128).phi
            values.append(wperp_sup_h1(trajectory, phi))
        self.assertGreater(values[0], values[1])
        self.assertGreater(values[1], values[2])
        self.assertLess(values[2], 1e-3)

    def test_window_must_hold_a_state(self):
        spec = ProblemSpec(lam=1.0, beta=1.0)
        trajectory = integrate_pde(spec, 1e-2, rough_state(64), T=0.1, dt=1e-2)
        with self.assertRaises(DomainError):
            wperp_sup_h1(trajectory, GridFunction.constant(64, 1.0), window=(0.5, 1.0))

    def test_pde_shadows_the_limit_ode(self):
        spec = worked_example_spec()
        phi = GridFunction.constant(64, 1.0)
        gaps = [
            shadowing_gap(
                spec,
                integrate_pde(
                    spec, eps, SimState.constant(64, 0.1, -0.1),
                    T=2.0, dt=1e-4, sample_stride=100,
                ),
                phi,
            )
            for eps in (1e-1, 1e-2, 1e-3)
        ]
        self.assertGreater(gaps[0], gaps[1])
        self.assertGreater(gaps[1], gaps[2])


class LimitOdeTest(SimpleTestCase):
    def setUp(self):
        self.spec = worked_example_spec()

    def test_origin_is_an_equilibrium(self):
        trajectory = integrate_limit_ode(self.spec, (0.0, 0.0), 10.0)
        np.testing.assert_array_equal(trajectory.final, (0.0, 0.0))
        self.assertFalse(trajectory.blowup)

    def test_converges_to_the_focus(self):
        trajectory = integrate_limit_ode(self.spec, (0.1, -0.1), 50.0)
        self.assertLess(np.linalg.norm(trajectory.final - FOCUS), 1e-5)

    def test_blowup_is_flagged(self):
        trajectory = integrate_limit_ode(self.spec, (0.0, 10.0), 5.0)
        self.assertTrue(trajectory.blowup)
        self.assertLess(trajectory.t[-1], 1.0)


class TrajectoryExportTest(SimpleTestCase):
    def setUp(self):
        spec = ProblemSpec(lam=1.0, beta=1.0)
        self.trajectory = integrate_pde(spec, 1e-2, rough_state(64), T=0.05, dt=1e-2)
        self.phi = GridFunction.constant(64, 1.0)

    def test_rows(self):
        rows = trajectory_rows(self.trajectory, self.phi)
        self.assertEqual(len(rows), 6)
        self.assertEqual(tuple(rows[0]), TRAJECTORY_CSV_COLUMNS)
        self.assertAlmostEqual(rows[0]["u"], 0.1, places=12)
        self.assertEqual({row["blowup"] for row in rows}, {0})

    def test_snapshots(self):
        rows = snapshot_rows(self.trajectory, 5)
        self.assertEqual(len(rows), 2 * 64)
        self.assertEqual(tuple(rows[0]), SNAPSHOT_CSV_COLUMNS)
        self.assertEqual(snapshot_rows(self.trajectory, 0), [])

    def test_serializer(self):
        data = TrajectorySerializer(self.trajectory, context={"phi": self.phi}).data
        self.assertFalse(data["blowup"])
        self.assertEqual(len(data["samples"]), 6)
