"""Test module for the :mod:`credalaudit.lp` module"""
import unittest
from fractions import Fraction
from credalaudit.lp import (
    LinearConstraint, LpProblem, Optimal, Infeasible, Unbounded, lp_solve,
    strict_feasible, lfp_solve, vertices, simplex_constraint)
from credalaudit.utils import DimensionTooLarge, PreconditionViolated
import _base_testing as bt


def simplex(n):
    return [simplex_constraint(n)]


class LpSolveTest(bt.BaseTest):
    """Test the :func:`credalaudit.lp.lp_solve` function"""

    def test_binding_bound(self):
        outcome = lp_solve(LpProblem(
            3, [1, 0, 0], 'max',
            simplex(3) + [LinearConstraint([1, 0, 0], 'le', '1/2')]))
        self.assertIsInstance(outcome, Optimal)
        self.assertEqual(outcome.value, Fraction(1, 2))

    def test_infeasible(self):
        outcome = lp_solve(LpProblem(
            3, [1, 0, 0], 'max',
            simplex(3) + [LinearConstraint.ge([1, 0, 0], 2)]))
        self.assertIsInstance(outcome, Infeasible)

    def test_vertex_optimum(self):
        outcome = lp_solve(LpProblem(3, [1, 1, 0], 'max', simplex(3)))
        self.assertEqual(outcome.value, 1)

    def test_minimum(self):
        outcome = lp_solve(LpProblem(
            2, [1, 0], 'min',
            simplex(2) + [LinearConstraint.ge([1, 0], '1/3')]))
        self.assertEqual(outcome.value, Fraction(1, 3))
        self.assertEqual(outcome.point, (Fraction(1, 3), Fraction(2, 3)))

    def test_unbounded(self):
        outcome = lp_solve(LpProblem(2, [1, 0], 'max', [
            LinearConstraint([1, -1], 'le', 0)]))
        self.assertIsInstance(outcome, Unbounded)

    def test_optimal_point_feasible(self):
        constraints = simplex(4) + [
            LinearConstraint([1, 1, 0, 0], 'le', '2/3'),
            LinearConstraint.ge([0, 1, 1, 0], '1/4'),
            LinearConstraint([0, 0, 1, -1], 'eq', 0)]
        outcome = lp_solve(LpProblem(4, [3, 1, 2, 1], 'max', constraints))
        self.assertIsInstance(outcome, Optimal)
        for c in constraints:
            self.assertTrue(c.holds(outcome.point), msg=str(c))
        self.assertEqual(
            outcome.value,
            sum(c * v for c, v in zip([3, 1, 2, 1], outcome.point)))

    def test_degenerate(self):
        """Redundant equalities do not break the solver"""
        constraints = simplex(3) + simplex(3) + [
            LinearConstraint([1, 0, 0], 'le', 0)]
        outcome = lp_solve(LpProblem(3, [0, 1, 0], 'max', constraints))
        self.assertEqual(outcome.value, 1)

    def test_strict_rejected(self):
        with self.assertRaises(ValueError):
            lp_solve(LpProblem(2, [1, 0], 'max', [
                LinearConstraint([1, 0], 'lt', 1)]))


class StrictFeasibleTest(bt.BaseTest):
    """Test the :func:`credalaudit.lp.strict_feasible` function"""

    def test_interior(self):
        point = strict_feasible(
            simplex(2) + [LinearConstraint([0, 1], 'lt', 1)], 2)
        self.assertIsNotNone(point)
        self.assertLess(point[1], 1)
        self.assertEqual(sum(point), 1)

    def test_contradiction(self):
        self.assertIsNone(strict_feasible(
            simplex(2) + [LinearConstraint.ge([1, 0], 1),
                          LinearConstraint([1, 0], 'lt', 1)], 2))

    def test_open_contradiction(self):
        self.assertIsNone(strict_feasible(
            simplex(2) + [LinearConstraint.gt([1, 0], '1/3'),
                          LinearConstraint([1, 0], 'lt', '1/3')], 2))

    def test_closed(self):
        self.assertEqual(
            strict_feasible(simplex(2) + [
                LinearConstraint([1, 0], 'eq', '1/4')], 2),
            (Fraction(1, 4), Fraction(3, 4)))


class LfpSolveTest(bt.BaseTest):
    """Test the :func:`credalaudit.lp.lfp_solve` function"""

    def test_conditional_probability(self):
        # max Pr({1} | {1, 2}) over Pr({3}) >= 1/2 and Pr({2}) >= 1/4
        constraints = simplex(3) + [
            LinearConstraint.ge([0, 0, 1], '1/2'),
            LinearConstraint.ge([0, 1, 0], '1/4')]
        outcome = lfp_solve(constraints, 3, [1, 0, 0], [1, 1, 0])
        self.assertEqual(outcome.value, Fraction(1, 2))
        outcome = lfp_solve(constraints, 3, [1, 0, 0], [1, 1, 0], 'min')
        self.assertEqual(outcome.value, 0)

    def test_null_denominator(self):
        constraints = simplex(2) + [LinearConstraint([0, 1], 'eq', 1)]
        self.assertIsInstance(
            lfp_solve(constraints, 2, [1, 0], [1, 0]), Infeasible)


class VerticesTest(bt.BaseTest):
    """Test the :func:`credalaudit.lp.vertices` function"""

    def test_simplex(self):
        self.assertEqual(vertices([], 3), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])

    def test_half_space(self):
        self.assertEqual(
            vertices([LinearConstraint.ge([1, 0], '1/2')], 2),
            [(1, 0), (Fraction(1, 2), Fraction(1, 2))])

    def test_dominated_set(self):
        # measures dominating m({1,2}) = m({3}) = 1/2
        constraints = [LinearConstraint.ge([1, 1, 0], '1/2'),
                       LinearConstraint.ge([0, 0, 1], '1/2')]
        half = Fraction(1, 2)
        self.assertEqual(sorted(vertices(constraints, 3)),
                         [(0, half, half), (half, 0, half)])

    def test_empty(self):
        self.assertEqual(
            vertices([LinearConstraint.ge([1, 0, 0], 2)], 3), [])

    def test_dimension_limit(self):
        with self.assertRaises(DimensionTooLarge):
            vertices([], 7)

    def test_strict(self):
        with self.assertRaises(PreconditionViolated):
            vertices([LinearConstraint([1, 0], 'lt', 1)], 2)

    def test_duplicates(self):
        half = LinearConstraint.ge([1, 0], '1/2')
        self.assertEqual(vertices([half, half, LinearConstraint.ge(
            [2, 0], 1)], 2), vertices([half], 2))


class LinearConstraintTest(bt.BaseTest):
    """Test the :class:`credalaudit.lp.LinearConstraint` class"""

    def test_doc(self):
        self.assertIn('coefficients . x', LinearConstraint.__doc__)
        self.assertIn('Parameters', LinearConstraint.__doc__)
        self.assertIn('relation', LinearConstraint.__doc__)

    def test_ge(self):
        c = LinearConstraint.ge([1, 0], '1/2')
        self.assertEqual(c.coefficients, (-1, 0))
        self.assertEqual((c.relation, c.bound), ('le', Fraction(-1, 2)))
        self.assertEqual(c.dimension, 2)

    def test_invalid_relation(self):
        with self.assertRaises(ValueError):
            LinearConstraint([1, 0], 'ge', 1)


if __name__ == '__main__':
    unittest.main()
