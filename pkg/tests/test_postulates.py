"""Test module for the :mod:`credalaudit.postulates` module"""
import unittest
from fractions import Fraction
from credalaudit.lp import LinearConstraint
from credalaudit.utils import (
    InputError, MalformedFixture, PreconditionViolated, HypothesisNotMet)
from credalaudit.measures import (
    Measure, FiniteSet, Polytope, grid_measures, enumerate_surjections)
from credalaudit.postulates import (
    UNBOUNDED, NEG_INFINITY, INFINITE_SPACE_LIMIT, Fixture, Pass, Fail,
    Inconclusive, singleton_fixtures, check_core_postulate, p6_constant,
    family_constants, diverges, check_p6, continuity_probe, supprob_eval,
    supprob_xy, check_proposition, replay_witness, witness_to_json,
    witness_from_json, verdict_to_json)
from credalaudit.audit import default_audit_config
import _base_testing as bt
from _base_testing import F


class CorePostulatesTest(bt.BaseTest):
    """Test the checkers of P1 to P5 and P7"""

    def setUp(self):
        super(CorePostulatesTest, self).setUp()
        self.m2 = self.space(2)
        self.m3 = self.space(3)
        self.open_poly = Polytope(self.m2, [
            LinearConstraint([0, 1], 'lt', 1)])
        self.grid = grid_measures(self.m3, 2)

    def singletons(self):
        return singleton_fixtures(self.grid)

    def test_p1(self):
        fixtures = self.singletons()
        for rule in ['cond', 'constrain', 'forget', 'subset', 'ml']:
            verdict = check_core_postulate('P1', rule, fixtures)
            self.assertIsInstance(verdict, Pass, msg=rule)
            self.assertEqual(verdict.fixtures_checked, len(fixtures))

    def test_p2_cond(self):
        m2 = self.m2
        fixtures = [
            Fixture(self.m3, FiniteSet(self.m3, [pr]), b, shift=f)
            for f in enumerate_surjections(self.m3, m2)
            for pr in self.grid for b in m2.events() if not b.is_empty()]
        self.assertIsInstance(check_core_postulate('P2', 'cond', fixtures),
                              Pass)

    def test_p2_malformed(self):
        with self.assertRaises(MalformedFixture):
            check_core_postulate('P2', 'cond', self.singletons())

    def test_p3_forget(self):
        fixture = Fixture(self.m3, FiniteSet(self.m3, [
            Measure.uniform(self.m3)]), self.m3.event('12'),
            self.m3.event('23'))
        verdict = check_core_postulate('P3', 'forget', [fixture])
        self.assertIsInstance(verdict, Fail)
        self.assertEqual(verdict.witness.distinguishing_measure,
                         Measure.point_mass(self.m3, 2))
        self.assertIsInstance(check_core_postulate('P3', 'cond', [fixture]),
                              Pass)

    def test_p4_trivial(self):
        fixture = Fixture(self.m3, self.singleton(self.m3, '1/2', '1/2', 0),
                          self.m3.event('12'))
        self.assertIsInstance(check_core_postulate('P4', 'trivial',
                                                   [fixture]), Fail)
        self.assertIsInstance(check_core_postulate('P4', 'cond', [fixture]),
                              Pass)

    def test_p4_irrelevant(self):
        fixture = Fixture(self.m3, FiniteSet(self.m3, [
            Measure.uniform(self.m3)]), self.m3.event('12'))
        self.assertIsInstance(
            check_core_postulate('P4', 'trivial', [fixture]), Inconclusive)

    def test_p5_closure(self):
        fixture = Fixture(self.m2, self.open_poly, self.m2.full)
        verdict = check_core_postulate('P5', 'closure', [fixture])
        self.assertIsInstance(verdict, Fail)
        self.assertEqual(verdict.witness.distinguishing_measure,
                         Measure.point_mass(self.m2, 1))
        self.assertIsInstance(check_core_postulate('P5', 'cond', [fixture]),
                              Pass)

    def test_p7(self):
        fixtures = self.singletons()
        verdict = check_core_postulate('P7', 'constrain', fixtures)
        self.assertIsInstance(verdict, Fail)
        verdict = check_core_postulate('P7', 'cond', fixtures)
        self.assertIsInstance(verdict, Pass)
        self.assertIsNotNone(verdict.witness)

    def test_unknown(self):
        with self.assertRaises(InputError):
            check_core_postulate('P6', 'cond', [])

    def test_skipped(self):
        fixture = Fixture(self.m2, self.open_poly, self.m2.full)
        verdict = check_core_postulate('P1', 'subset', [fixture])
        self.assertIsInstance(verdict, Inconclusive)

    def test_witness_json(self):
        fixture = Fixture(self.m2, self.open_poly, self.m2.full)
        witness = check_core_postulate('P5', 'closure', [fixture]).witness
        decoded = witness_from_json(witness_to_json(witness))
        self.assertEqual(decoded.fixture.x, self.open_poly)
        self.assertEqual(decoded.distinguishing_measure,
                         witness.distinguishing_measure)
        self.assertTrue(replay_witness(decoded))
        self.assertEqual(verdict_to_json(Fail(witness))['verdict'], 'fail')


class ContinuityTest(bt.BaseTest):
    """Test the bounded increase and the related postulates"""

    def setUp(self):
        super(ContinuityTest, self).setUp()
        self.cfg = default_audit_config(max_atoms=3,
                                        grid_denominators=(1, 2),
                                        family_depth=6)
        self.measures = grid_measures(self.space(3), 2)

    def test_p6_constant(self):
        m3 = self.space(3)
        for pr in self.measures:
            self.assertEqual(p6_constant('cond', m3, pr), 1)
        m2 = self.space(2)
        self.assertEqual(
            p6_constant('forget', m2, Measure.point_mass(m2, 0)), UNBOUNDED)

    def test_subset_family(self):
        self.assertEqual(family_constants('subset', 6), [1, 2, 3, 4, 5])

    def test_diverges(self):
        self.assertTrue(diverges([1, 2, 3], 100))
        self.assertTrue(diverges([1, 50, 101], 100))
        self.assertFalse(diverges([1, 2, 2], 100))
        self.assertFalse(diverges([1, F('3/2'), F('7/4')], 100))
        self.assertFalse(diverges([1, UNBOUNDED], 100))

    def test_cond(self):
        verdicts = check_p6('cond', self.cfg, self.measures)
        self.assertEqual(list(verdicts), ["P6'", "P6''", 'P6*', 'P6'])
        for pid, verdict in verdicts.items():
            self.assertIsInstance(verdict, Pass, msg=pid)

    def test_subset_grid(self):
        # on the grid of halves every measure with pr(b) < 1 has one atom
        # with positive probability in b
        verdicts = check_p6('subset', self.cfg, self.measures)
        self.assertIsInstance(verdicts["P6'"], Pass)
        self.assertIsInstance(verdicts['P6'], Pass)

    def test_subset(self):
        m3 = self.space(3)
        verdicts = check_p6('subset', self.cfg,
                            self.measures + [Measure.uniform(m3)])
        self.assertIsInstance(verdicts["P6'"], Fail)
        witness = verdicts["P6'"].witness
        self.assertEqual(witness.fixture.x.measures[0], Measure.uniform(m3))
        self.assertEqual(len(witness.observed), 3)
        self.assertIsInstance(verdicts["P6''"], Fail)
        self.assertEqual(verdicts["P6''"].label, INFINITE_SPACE_LIMIT)
        self.assertEqual(verdicts["P6''"].witness.observed['family'],
                         ['1/1', '2/1', '3/1', '4/1', '5/1'])
        self.assertIsInstance(verdicts['P6*'], Pass)
        self.assertIsInstance(verdicts['P6'], Fail)

    def test_forget(self):
        verdicts = check_p6('forget', self.cfg, self.measures)
        self.assertIsInstance(verdicts["P6''"], Fail)
        self.assertIsNone(verdicts["P6''"].label)
        self.assertIsInstance(verdicts['P6*'], Fail)
        self.assertTrue(replay_witness(verdicts['P6*'].witness))

    def test_constrain(self):
        verdicts = check_p6('constrain', self.cfg, self.measures)
        self.assertIsInstance(verdicts["P6'"], Pass)
        self.assertIsInstance(verdicts['P6'], Pass)

    def test_continuity_probe(self):
        self.assertIsInstance(continuity_probe('cond', self.measures), Pass)
        self.assertIsInstance(continuity_probe('forget', self.measures),
                              Inconclusive)


class SupprobTest(bt.BaseTest):
    """Test the :func:`credalaudit.postulates.supprob_eval` function"""

    def test_cond(self):
        m3 = self.space(3)
        for pr in grid_measures(m3, 4):
            for b in m3.events():
                for a in m3.events():
                    if a.issubset(b) and pr.prob(a) > 0:
                        self.assertEqual(
                            supprob_eval('cond', m3, pr, a, b), 1)

    def test_subset(self):
        m3 = self.space(3)
        uniform = Measure.uniform(m3)
        self.assertEqual(supprob_eval('subset', m3, uniform, m3.event('1'),
                                      m3.event('12')), 2)
        self.assertEqual(supprob_xy('subset', F('1/4'), F('3/4')), 3)

    def test_empty(self):
        m3 = self.space(3)
        pr = self.measure(m3, '1/4', '1/4', '1/2')
        self.assertEqual(supprob_eval('constrain', m3, pr, m3.event('1'),
                                      m3.event('12')), NEG_INFINITY)

    def test_precondition(self):
        m3 = self.space(3)
        pr = self.measure(m3, 0, '1/2', '1/2')
        with self.assertRaises(PreconditionViolated):
            supprob_eval('cond', m3, pr, m3.event('13'), m3.event('1'))
        with self.assertRaises(PreconditionViolated):
            supprob_eval('cond', m3, pr, m3.event('1'), m3.event('12'))


class PropositionTest(bt.BaseTest):
    """Test the consequences of the postulates"""

    def setUp(self):
        super(PropositionTest, self).setUp()
        self.m3 = self.space(3)
        self.fixtures = singleton_fixtures(grid_measures(self.m3, 2))

    def test_dominance(self):
        for rule in ['cond', 'constrain', 'forget', 'subset']:
            self.assertIsInstance(check_proposition(
                'DominanceDichotomy', rule, self.fixtures), Pass, msg=rule)

    def test_extreme(self):
        for rule in ['cond', 'constrain']:
            self.assertIsInstance(check_proposition(
                'ExtremePreservation', rule, self.fixtures), Pass, msg=rule)

    def test_singleton_is_cond(self):
        self.assertIsInstance(check_proposition(
            'SingletonIsCond', 'cond', self.fixtures), Pass)

    def test_averaging(self):
        self.assertIsInstance(check_proposition(
            'Averaging', 'cond', self.fixtures), Pass)

    def test_v_table(self):
        for rule in ['cond', 'subset']:
            for which in ['VWellDefined', 'VMonotone']:
                self.assertIsInstance(check_proposition(
                    which, rule, self.fixtures), Pass, msg=(rule, which))

    def test_hypotheses(self):
        verdicts = {'P1': Pass(1), 'P2': Fail(None)}
        with self.assertRaises(HypothesisNotMet):
            check_proposition('DominanceDichotomy', 'forget', self.fixtures,
                              verdicts)
        verdicts['P2'] = Pass(1)
        verdict = check_proposition('DominanceDichotomy', 'cond',
                                    self.fixtures, verdicts)
        self.assertIn('hypotheses P1, P2 hold on the pool', verdict.notes)

    def test_unknown(self):
        with self.assertRaises(InputError):
            check_proposition('Nonsense', 'cond', self.fixtures)


if __name__ == '__main__':
    unittest.main()
