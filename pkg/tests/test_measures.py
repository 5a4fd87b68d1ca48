"""Test module for the :mod:`credalaudit.measures` module"""
import unittest
from fractions import Fraction
from credalaudit.lp import LinearConstraint
from credalaudit.utils import (
    ZeroEvidence, InvalidMeasure, InputError, UnsupportedRepresentation)
from credalaudit.measures import (
    MeasureSpace, Measure, RepShift, FiniteSet, Polytope, Derived,
    conditional, pushforward, preimage, enumerate_surjections, grid_measures,
    credal_membership, credal_closure, credal_equal_probe, EqualOnCandidates,
    Differ, condition_set, pushforward_set, union_sets, parse_measure,
    credal_from_json, shift_from_json, loads)
import _base_testing as bt
from _base_testing import F


class MeasureTest(bt.BaseTest):
    """Test measures, conditioning and representation shifts"""

    def test_invalid(self):
        m2 = self.space(2)
        with self.assertRaises(InvalidMeasure):
            Measure(m2, ['1/2', '1/3'])
        with self.assertRaises(InvalidMeasure):
            Measure(m2, [2, -1])
        with self.assertRaises(InvalidMeasure):
            Measure(m2, [1])

    def test_conditional(self):
        m3 = self.space(3)
        self.assertEqual(
            conditional(Measure.uniform(m3), m3.event('12')).weights,
            (F('1/2'), F('1/2'), 0))
        pr = self.measure(m3, '1/4', '1/4', '1/2')
        self.assertEqual(conditional(pr, m3.event('13')).weights,
                         (F('1/3'), 0, F('2/3')))

    def test_zero_evidence(self):
        m2 = self.space(2)
        with self.assertRaises(ZeroEvidence):
            conditional(self.measure(m2, 1, 0), m2.event('2'))

    def test_pushforward(self):
        # worlds w_ijk mapped to w'_ij
        source = MeasureSpace(['%i%i%i' % (i, j, k) for i in range(2)
                               for j in range(2) for k in range(2)])
        target = MeasureSpace(['%i%i' % (i, j) for i in range(2)
                               for j in range(2)])
        f = RepShift.from_labels(source, target,
                                 {a: a[:2] for a in source.atoms})
        pr = Measure(source, [F(k + 1) / 36 for k in range(8)])
        image = pushforward(f, pr)
        for j, label in enumerate(target.atoms):
            self.assertEqual(image.weights[j], pr.prob(
                source.event([label + '0', label + '1'])))
        self.assertEqual(pushforward(f, Measure.uniform(source)),
                         Measure.uniform(target))
        self.assertEqual(pushforward(RepShift.identity(source), pr), pr)

    def test_preimage(self):
        m3, m2 = self.space(3), self.space(2)
        f = RepShift(m3, m2, [0, 0, 1])
        self.assertEqual(preimage(f, m2.event('1')), m3.event('12'))
        self.assertEqual(preimage(f, m2.full), m3.full)
        self.assertEqual(preimage(f, m2.empty), m3.empty)

    def test_enumerate_surjections(self):
        m2, m3 = self.space(2), self.space(3)
        self.assertEqual(len(enumerate_surjections(m2, m2)), 2)
        self.assertEqual(len(enumerate_surjections(m3, m2)), 6)
        self.assertEqual(enumerate_surjections(m2, m3), [])

    def test_not_surjective(self):
        with self.assertRaises(InputError):
            RepShift(self.space(3), self.space(2), [0, 0, 0])

    def test_grid_measures(self):
        m2, m3 = self.space(2), self.space(3)
        self.assertEqual([pr.weights for pr in grid_measures(m2, 2)],
                         [(0, 1), (F('1/2'), F('1/2')), (1, 0)])
        self.assertMeasuresEqual(grid_measures(m3, 1),
                                 [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        self.assertEqual(len(grid_measures(m3, 4)), 15)
        for pr in grid_measures(self.space(4), 3):
            self.assertEqual(sum(pr.weights), 1)

    def test_parse_measure(self):
        m3 = MeasureSpace(['a', 'b', 'c'])
        self.assertEqual(parse_measure(m3, 'uniform'), Measure.uniform(m3))
        self.assertEqual(parse_measure(m3, '(1/4,1/4,1/2)').weights,
                         (F('1/4'), F('1/4'), F('1/2')))
        self.assertEqual(parse_measure(m3, '{"a": "1/2", "c": "1/2"}').weights,
                         (F('1/2'), 0, F('1/2')))
        with self.assertRaises(InputError):
            parse_measure(m3, '(1/4,1/4)')
        with self.assertRaises(InputError):
            parse_measure(m3, '{"a": "1/2", "d": "1/2"}')

    def test_loads(self):
        with self.assertRaises(InputError) as ctx:
            loads('[1, 2', 'event')
        self.assertIn('line 1', str(ctx.exception))


class CredalSetTest(bt.BaseTest):
    """Test finite sets, polytopes and derived sets"""

    def setUp(self):
        super(CredalSetTest, self).setUp()
        self.m2 = self.space(2)
        # {Pr : Pr({2}) < 1} on M_2
        self.open_poly = Polytope(self.m2, [
            LinearConstraint([0, 1], 'lt', 1)])

    def test_membership(self):
        delta2 = Measure.point_mass(self.m2, 1)
        self.assertFalse(credal_membership(self.open_poly, delta2))
        self.assertTrue(credal_membership(credal_closure(self.open_poly),
                                          delta2))
        x = FiniteSet(self.m2, [self.measure(self.m2, '1/2', '1/2'),
                                self.measure(self.m2, 1, 0)])
        self.assertTrue(credal_membership(
            x, self.measure(self.m2, '1/2', '1/2')))

    def test_closure(self):
        closed = credal_closure(self.open_poly)
        self.assertTrue(closed.is_closed)
        self.assertIsInstance(credal_equal_probe(
            closed, Polytope.simplex(self.m2)), EqualOnCandidates)
        x = FiniteSet(self.m2, [self.measure(self.m2, '1/2', '1/2')])
        self.assertIs(credal_closure(x), x)
        band = Polytope(self.m2, [LinearConstraint.ge([1, 0], '1/3'),
                                  LinearConstraint([1, 0], 'lt', '2/3')])
        self.assertEqual(
            credal_closure(band).constraints,
            (LinearConstraint.ge([1, 0], '1/3'),
             LinearConstraint([1, 0], 'le', '2/3')))

    def test_closure_derived(self):
        with self.assertRaises(UnsupportedRepresentation):
            credal_closure(condition_set(self.open_poly, self.m2.full))

    def test_equal_probe(self):
        res = credal_equal_probe(self.open_poly, Polytope.simplex(self.m2))
        self.assertIsInstance(res, Differ)
        self.assertEqual(res.witness, Measure.point_mass(self.m2, 1))
        self.assertFalse(res.in_first)
        x = FiniteSet(self.m2, [self.measure(self.m2, '1/2', '1/2'),
                                self.measure(self.m2, 1, 0)])
        y = FiniteSet(self.m2, list(x)[::-1])
        self.assertIsInstance(credal_equal_probe(x, x), EqualOnCandidates)
        self.assertIsInstance(credal_equal_probe(x, y), EqualOnCandidates)

    def test_polytope_sup(self):
        self.assertEqual(self.open_poly.sup([0, 1]), 1)
        self.assertEqual(self.open_poly.inf([0, 1]), 0)
        self.assertFalse(self.open_poly.is_empty())
        empty = self.open_poly.restrict_prob(self.m2.event('2'), 'eq', 1)
        self.assertTrue(empty.is_empty())
        self.assertIsNone(empty.sup([1, 0]))

    def test_condition_set(self):
        m3 = self.space(3)
        poly = Polytope(m3, [LinearConstraint.ge([0, 0, 1], '1/2')])
        cond = condition_set(poly, m3.event('12'))
        self.assertIsInstance(cond, Derived)
        # (1/2, 1/2, 0) is the conditional of (1/4, 1/4, 1/2)
        self.assertTrue(cond.contains(self.measure(m3, '1/2', '1/2', 0)))
        self.assertFalse(cond.contains(self.measure(m3, '1/2', 0, '1/2')))
        self.assertEqual(cond.sup_prob(m3.event('1')), 1)
        self.assertFalse(cond.is_empty())
        certain = Polytope.certain(m3.event('3'))
        self.assertTrue(condition_set(certain, m3.event('12')).is_empty())

    def test_pushforward_set(self):
        m3 = self.space(3)
        f = RepShift(m3, self.m2, [0, 0, 1])
        poly = Polytope(m3, [LinearConstraint.ge([0, 0, 1], '1/2')])
        image = pushforward_set(f, poly)
        self.assertEqual(image.space, self.m2)
        self.assertTrue(image.contains(self.measure(self.m2, '1/4', '3/4')))
        self.assertFalse(image.contains(self.measure(self.m2, '3/4', '1/4')))
        self.assertEqual(image.sup_prob(self.m2.event('1')), F('1/2'))
        x = FiniteSet(m3, [Measure.uniform(m3)])
        self.assertMeasuresEqual(pushforward_set(f, x),
                                 [('2/3', '1/3')])

    def test_union(self):
        a = FiniteSet(self.m2, [self.measure(self.m2, 1, 0)])
        b = FiniteSet(self.m2, [self.measure(self.m2, 0, 1)])
        u = union_sets(self.m2, [a, b, FiniteSet(self.m2)])
        self.assertIsInstance(u, FiniteSet)
        self.assertEqual(len(u), 2)
        mixed = union_sets(self.m2, [a, self.open_poly])
        self.assertTrue(mixed.contains(self.measure(self.m2, 1, 0)))
        self.assertFalse(mixed.contains(self.measure(self.m2, 0, 1)))
        self.assertEqual(mixed.sup_prob(self.m2.event('2')), 1)


class JsonTest(bt.BaseTest):
    """Test the decoding of credal sets"""

    def test_finite(self):
        m2 = self.space(2)
        x = credal_from_json(m2, [{'1': '1/2', '2': '1/2'}, {'1': '1/1'}])
        self.assertIsInstance(x, FiniteSet)
        self.assertMeasuresEqual(x, [('1/2', '1/2'), (1, 0)])
        self.assertTrue(credal_from_json(m2, []).is_empty())

    def test_polytope(self):
        m2 = self.space(2)
        poly = Polytope(m2, [LinearConstraint([0, 1], 'lt', 1)])
        self.assertEqual(credal_from_json(m2, poly.to_json()), poly)
        simplex = Polytope.simplex(m2)
        self.assertEqual(credal_from_json(m2, simplex.to_json()), simplex)

    def test_derived(self):
        m3 = self.space(3)
        x = condition_set(Polytope(m3, [
            LinearConstraint.ge([0, 0, 1], '1/2')]), m3.event('12'))
        self.assertEqual(credal_from_json(m3, x.to_json()), x)

    def test_shift(self):
        m3, m2 = self.space(3), self.space(2)
        f = RepShift(m3, m2, [0, 0, 1])
        self.assertEqual(shift_from_json(f.to_json()), f)
        with self.assertRaises(InputError):
            shift_from_json({'source': ['1']})


if __name__ == '__main__':
    unittest.main()
