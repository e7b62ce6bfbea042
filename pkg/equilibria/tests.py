import numpy as np
from django.test import SimpleTestCase

from compactify.charts import Chart, compactify, equator_poly
from equilibria.census import equilibrium_census
from equilibria.classify import Classification, Equilibrium, classify
from equilibria.finite import crossing_subcells, finite_equilibria
from equilibria.infinite import antipodal, infinite_equilibria
from equilibria.oracle import grid_roots
from equilibria.serializers import CSV_COLUMNS, csv_rows
from polyfield.exceptions import DomainError
from polyfield.fields import PlanarField
from polyfield.polynomials import BivariatePoly, UnivariatePoly
from polyfield.problem import ProblemSpec, limit_field, worked_example_spec

FOCUS = (0.419643, -0.771845)
TRIBONACCI = 1.839286755


def equator_equilibrium(J, chart=Chart.U1, coords=(0.5, 0.0)):
    eigenvalues, classification = classify(J)
    return Equilibrium(
        chart=chart,
        coords=coords,
        disk_position=(0.9, 0.4),
        eigenvalues=eigenvalues,
        classification=classification,
        at_infinity=True,
        jacobian=np.asarray(J, float),
    )


class ClassifyTest(SimpleTestCase):
    def test_saddle(self):
        eigenvalues, kind = classify([[-1, 0], [0, 1]])
        self.assertEqual(kind, Classification.SADDLE)
        self.assertEqual(eigenvalues, (-1 + 0j, 1 + 0j))

    def test_center(self):
        eigenvalues, kind = classify([[0, -1], [1, 0]])
        self.assertEqual(kind, Classification.CENTER)
        self.assertAlmostEqual(abs(eigenvalues[0].imag), 1.0)

    def test_nodes_and_foci(self):
        self.assertEqual(classify([[-1, 0], [0, -2]])[1], Classification.STABLE_NODE)
        self.assertEqual(classify([[1, 0], [0, 2]])[1], Classification.UNSTABLE_NODE)
        self.assertEqual(classify([[-1, -3], [3, -1]])[1], Classification.STABLE_FOCUS)
        self.assertEqual(classify([[1, -3], [3, 1]])[1], Classification.UNSTABLE_FOCUS)

    def test_zero_eigenvalue_is_flagged(self):
        self.assertEqual(classify([[0, 1], [0, -1]])[1], Classification.NON_HYPERBOLIC)
        self.assertEqual(classify([[0, 0], [0, 0]])[1], Classification.NON_HYPERBOLIC)

    def test_invariant_under_positive_rescaling(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            J = rng.normal(size=(2, 2))
            c = float(np.exp(rng.uniform(-5, 5)))
            self.assertEqual(classify(c * J)[1], classify(J)[1])

    def test_hyperbolic_flag_follows_real_parts(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            J = rng.normal(size=(2, 2))
            eigenvalues, kind = classify(J)
            threshold = 1e-8 * np.linalg.norm(J)
            self.assertEqual(
                kind.is_hyperbolic,
                all(abs(e.real) > threshold for e in eigenvalues),
            )


class FiniteEquilibriaTest(SimpleTestCase):
    def setUp(self):
        self.X = limit_field(worked_example_spec())

    def test_worked_example(self):
        found = finite_equilibria(self.X, radius=5.0)
        self.assertEqual(len(found), 2)
        by_kind = {e.classification: e for e in found}
        saddle = by_kind[Classification.SADDLE]
        focus = by_kind[Classification.STABLE_FOCUS]
        np.testing.assert_allclose(saddle.coords, (0.0, 0.0), atol=1e-12)
        np.testing.assert_allclose(focus.coords, FOCUS, atol=1e-4)
        for e in found:
            P, Q = self.X(*e.coords)
            self.assertLess(max(abs(P), abs(Q)), 1e-10)

    def test_linear_sink(self):
        found = finite_equilibria(PlanarField.linear(-1, 0, 0, -1), radius=5.0)
        self.assertEqual(len(found), 1)
        self.assertEqual(found[0].classification, Classification.STABLE_NODE)

    def test_rejects_coarse_seeding(self):
        with self.assertRaises(DomainError):
            finite_equilibria(self.X, seeds_per_axis=4)

    def test_worked_example_has_no_missed_root_warnings(self):
        for radius in (5.0, 10.0):
            found = finite_equilibria(self.X, radius=radius)
            self.assertEqual(found.warnings, [])
            self.assertEqual(len(found), 2)
        census = equilibrium_census(compactify(self.X))
        self.assertEqual(census.warnings, [])

    def test_cell_where_zero_curves_do_not_meet(self):
        # both components change sign on the corners, the curves stay apart
        lo, size = np.array([-1.3, -1.3]), 0.87
        self.assertEqual(len(crossing_subcells(self.X, lo, size)), 0)

    def test_cell_around_a_root_survives_quadrisection(self):
        centres = crossing_subcells(self.X, np.array([0.2, -1.0]), 0.5)
        self.assertGreater(len(centres), 0)
        distances = np.linalg.norm(centres - np.array(FOCUS), axis=-1)
        self.assertLess(distances.max(), 1e-3)

    def test_worked_example_matches_oracle(self):
        roots = grid_roots(self.X, 5.0)
        found = finite_equilibria(self.X, radius=5.0)
        self.assertEqual(len(roots), len(found))
        for e in found:
            distances = np.linalg.norm(roots - np.array(e.coords), axis=-1)
            self.assertLess(distances.min(), 1e-5)


class OracleAgreementTest(SimpleTestCase):
    """Newton multistart against the sign-change oracle on random fields"""

    radius = 2.0
    margin = 0.05

    def random_field(self, rng):
        while True:
            d = int(rng.integers(1, 4))
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
            if max(P.total_degree, Q.total_degree) >= 1:
                return PlanarField(P, Q)

    def well_posed(self, X, roots):
        for r in roots:
            if np.any(np.abs(r) > self.radius - self.margin):
                return False
            J = X.jacobian(*r)
            if abs(np.linalg.det(J)) < 1e-2 * (1.0 + np.sum(J**2)):
                return False
        if len(roots) > 1:
            gaps = [
                np.linalg.norm(a - b)
                for k, a in enumerate(roots)
                for b in roots[k + 1:]
            ]
            return min(gaps) > 1e-3
        return True

    def test_oracle_on_shifted_linear_field(self):
        X = PlanarField(
            BivariatePoly({(1, 0): 1.0, (0, 0): -0.3}),
            BivariatePoly({(0, 1): 1.0, (0, 0): 0.7}),
        )
        np.testing.assert_allclose(grid_roots(X, 2.0), [[0.3, -0.7]], atol=1e-12)

    def test_oracle_without_roots(self):
        X = PlanarField(
            BivariatePoly({(2, 0): 1.0, (0, 0): 1.0}), BivariatePoly.v()
        )
        self.assertEqual(grid_roots(X, 2.0).shape, (0, 2))

    def test_fifty_random_fields(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 50:
            X = self.random_field(rng)
            roots = grid_roots(X, self.radius)
            found = finite_equilibria(X, radius=self.radius, seeds_per_axis=40)
            points = np.array([e.coords for e in found]).reshape(-1, 2)
            near_edge = np.any(np.abs(points) > self.radius - self.margin)
            if near_edge or not self.well_posed(X, roots):
                continue
            checked += 1
            self.assertEqual(len(points), len(roots))
            for r in roots:
                self.assertLess(
                    np.linalg.norm(points - r, axis=-1).min(), 1e-5
                )


class InfiniteEquilibriaTest(SimpleTestCase):
    def setUp(self):
        self.cf = compactify(limit_field(worked_example_spec()))

    def test_worked_example_node_and_antipode(self):
        found = infinite_equilibria(self.cf)
        self.assertEqual(len(found), 2)
        node, antipode = found
        self.assertEqual(node.chart, Chart.U1)
        self.assertAlmostEqual(node.coords[0], TRIBONACCI, delta=1e-4)
        self.assertEqual(node.classification, Classification.STABLE_NODE)
        chart, x, y = node.alias
        self.assertEqual(chart, Chart.U2)
        self.assertAlmostEqual(x, 0.543689, delta=1e-4)
        self.assertEqual(antipode.chart, Chart.V1)
        self.assertEqual(antipode.classification, Classification.UNSTABLE_NODE)
        np.testing.assert_allclose(
            antipode.disk_position, np.negative(node.disk_position)
        )

    def test_alias_is_an_equilibrium_of_u2(self):
        node = infinite_equilibria(self.cf)[0]
        chart, x, y = node.alias
        np.testing.assert_allclose(self.cf[chart](x, y), (0.0, 0.0), atol=1e-9)
        _, kind = classify(self.cf[chart].jacobian(x, y))
        self.assertEqual(kind, Classification.STABLE_NODE)

    def test_root_matches_companion_oracle(self):
        roots = np.roots([1.0, -1.0, -1.0, -1.0])
        real = roots[np.abs(roots.imag) < 1e-9].real
        node = infinite_equilibria(self.cf)[0]
        self.assertAlmostEqual(node.coords[0], float(real[0]), delta=1e-9)

    def test_linear_field_has_degenerate_equator(self):
        cf = compactify(PlanarField.linear(-1, 0, 0, -1))
        found = infinite_equilibria(cf)
        self.assertTrue(
            all(e.classification == Classification.DEGENERATE for e in found)
        )

    def test_vertical_direction_is_found_in_u2(self):
        # u' = u^2, v' = v^2: (0, +-1) is a direction at infinity
        X = PlanarField(
            BivariatePoly({(2, 0): 1.0}),
            BivariatePoly({(0, 2): 1.0}),
        )
        cf = compactify(X)
        charts = {e.chart for e in infinite_equilibria(cf)}
        self.assertIn(Chart.U2, charts)
        self.assertIn(Chart.V2, charts)

    def test_double_equator_root_is_one_non_hyperbolic_point(self):
        # u' = -u + 2u^2, v' = -v + u^2 + v^2: U1 equator polynomial (x - 1)^2
        spec = ProblemSpec(
            lam=1.0,
            beta=1.0,
            f1=UnivariatePoly((0.0, 0.0, 2.0)),
            f2=UnivariatePoly((0.0, 0.0, 1.0)),
            g2=UnivariatePoly((0.0, 0.0, 1.0)),
            relaxed_degrees=True,
        )
        cf = compactify(limit_field(spec))
        np.testing.assert_allclose(equator_poly(cf, Chart.U1).coeffs, (1.0, -2.0, 1.0))
        found = infinite_equilibria(cf)
        in_u1 = [e for e in found if e.chart == Chart.U1]
        self.assertEqual(len(in_u1), 1)
        self.assertAlmostEqual(in_u1[0].coords[0], 1.0, delta=1e-9)
        self.assertEqual(in_u1[0].classification, Classification.NON_HYPERBOLIC)
        self.assertNotIn(
            Classification.SADDLE,
            {e.classification for e in found if e.chart in (Chart.U1, Chart.V1)},
        )
        for e in found:
            residual = np.linalg.norm(cf[e.chart](*e.coords))
            self.assertLess(residual, 1e-9)

    def test_count_bounded_by_degree(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            d = int(rng.integers(2, 5))
            P = BivariatePoly({(i, d - i): rng.normal() for i in range(d + 1)})
            Q = BivariatePoly({(i, d - i): rng.normal() for i in range(d + 1)})
            cf = compactify(PlanarField(P, Q))
            if equator_poly(cf, Chart.U1).is_zero():
                continue
            in_u1 = [e for e in infinite_equilibria(cf) if e.chart == Chart.U1]
            self.assertLessEqual(len(in_u1), d + 1)


class AntipodalTest(SimpleTestCase):
    def test_even_degree_flips_stability(self):
        e = equator_equilibrium([[-1, 0], [0, -2]])
        self.assertEqual(antipodal(e, 2).classification, Classification.UNSTABLE_NODE)

    def test_odd_degree_keeps_stability(self):
        e = equator_equilibrium([[-1, 0], [0, -2]])
        self.assertEqual(antipodal(e, 3).classification, Classification.STABLE_NODE)

    def test_saddle_stays_saddle(self):
        e = equator_equilibrium([[-1, 0], [0, 2]])
        for d in (2, 3, 4):
            self.assertEqual(antipodal(e, d).classification, Classification.SADDLE)

    def test_off_equator_is_rejected(self):
        e = equator_equilibrium([[-1, 0], [0, -2]], coords=(0.5, 0.3))
        with self.assertRaises(DomainError):
            antipodal(e, 2)
        e = equator_equilibrium([[-1, 0], [0, -2]], chart=Chart.U3, coords=(0, 0))
        with self.assertRaises(DomainError):
            antipodal(e, 2)


class CensusSerializationTest(SimpleTestCase):
    def test_csv_columns(self):
        cf = compactify(limit_field(worked_example_spec()))
        census = equilibrium_census(cf, radius=5.0)
        self.assertEqual(len(census.finite), 2)
        self.assertEqual(len(census.infinite), 2)
        self.assertTrue(census.all_hyperbolic)
        rows = csv_rows(census.all)
        self.assertEqual(len(rows), 4)
        self.assertEqual(tuple(rows[0]), CSV_COLUMNS)
        self.assertIn("StableFocus", {row["classification"] for row in rows})
