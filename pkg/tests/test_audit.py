"""Test module for the :mod:`credalaudit.audit` module"""
import json
import unittest
from credalaudit.utils import InputError
from credalaudit.measures import Measure, FiniteSet
from credalaudit.postulates import (
    POSTULATES, Fixture, Pass, Fail, check_core_postulate, replay_witness)
from credalaudit.rules import RULE_NAMES
import credalaudit.audit as audit
import _base_testing as bt
from _base_testing import F


class ConfigTest(bt.BaseTest):
    """Test the audit configuration"""

    def test_default(self):
        cfg = audit.default_audit_config()
        self.assertEqual(cfg.max_atoms, 4)
        self.assertEqual(cfg.grid_denominators, (1, 2, 3, 4))
        self.assertEqual(cfg.family_depth, 8)
        self.assertEqual(cfg.divergence_threshold, 100)
        self.assertEqual(cfg.rules, tuple(RULE_NAMES))

    def test_normalize(self):
        cfg = audit.default_audit_config(grid_denominators=[3, 1, 3],
                                         divergence_threshold='50')
        self.assertEqual(cfg.grid_denominators, (1, 3))
        self.assertEqual(cfg.divergence_threshold, F(50))

    def test_invalid(self):
        for kws in [dict(max_atoms=0), dict(max_atoms=6),
                    dict(grid_denominators=()),
                    dict(grid_denominators=(0, 2)), dict(family_depth=2),
                    dict(divergence_threshold=0), dict(random_fixtures=-1),
                    dict(rules=()), dict(rules=('bayes', ))]:
            with self.assertRaises(InputError, msg=str(kws)):
                audit.default_audit_config(**kws)

    def test_config_json(self):
        cfg = audit.default_audit_config(max_atoms=2, rules=('cond', ))
        d = audit.config_to_json(cfg)
        self.assertEqual(d['rules'], ['cond'])
        self.assertEqual(d['divergence_threshold'], '100/1')
        json.dumps(d)


class PoolTest(bt.BaseTest):
    """Test the fixture pools"""

    def setUp(self):
        super(PoolTest, self).setUp()
        self.cfg = audit.default_audit_config(
            max_atoms=2, grid_denominators=(1, 2), family_depth=3)

    def test_sizes(self):
        sizes = audit.pool_sizes(self.cfg)
        self.assertEqual(sizes['spaces'], 2)
        self.assertEqual(sizes['measures'], 4)
        self.assertEqual(sizes['pairs'], 3)
        self.assertEqual(sizes['polytopes'], 2)
        self.assertEqual(sizes['shifts'], 4)
        self.assertEqual(list(sizes['fixtures']),
                         list(audit.CORE_POSTULATES))

    def test_p3_fixtures(self):
        fixtures = audit.core_fixtures(self.cfg, 'P3')
        self.assertTrue(fixtures)
        self.assertTrue(all(f.c is not None for f in fixtures))

    def test_p2_fixtures(self):
        fixtures = audit.core_fixtures(self.cfg, 'P2')
        self.assertTrue(fixtures)
        for fixture in fixtures:
            self.assertEqual(fixture.shift.source, fixture.space)
            self.assertEqual(fixture.b.space, fixture.shift.target)

    def test_random_measures(self):
        first = audit.random_measures(4, 10, 3)
        self.assertEqual(first, audit.random_measures(4, 10, 3))
        self.assertEqual(len(first), 10)
        for pr in first:
            self.assertEqual(sum(pr.weights), 1)
            self.assertLessEqual(pr.space.size, 4)

    def test_polytope_catalog(self):
        self.assertEqual(len(audit.polytope_catalog(1)), 0)
        self.assertEqual(len(audit.polytope_catalog(3)), 7)

    def test_grid_points(self):
        self.assertEqual(audit.grid_points((2, 3)),
                         [F('1/3'), F('1/2'), F('2/3')])


class MinimizeTest(bt.BaseTest):
    """Test the shrinking of counterexamples"""

    def test_coarsen(self):
        m3 = self.space(3)
        self.assertEqual(audit.coarsen(Measure.uniform(m3), 2),
                         self.measure(m3, '1/2', '1/2', 0))
        m2 = self.space(2)
        self.assertEqual(audit.coarsen(self.measure(m2, '1/4', '3/4'), 1),
                         self.measure(m2, 0, 1))

    def test_forget_p3(self):
        m4 = self.space(4)
        fixture = Fixture(m4, FiniteSet(m4, [Measure.uniform(m4)]),
                          m4.event('12'), m4.event('23'))
        verdict = check_core_postulate('P3', 'forget', [fixture])
        self.assertIsInstance(verdict, Fail)
        witness = audit.minimize_witness(verdict.witness)
        self.assertEqual(witness.fixture.space.size, 2)
        self.assertEqual(witness.fixture.b.to_json(), ['2'])
        self.assertEqual(witness.fixture.c.to_json(), ['2', '3'])
        self.assertEqual(len(witness.fixture.x.measures[0].weights), 2)
        self.assertTrue(replay_witness(witness))
        # already minimal
        self.assertEqual(audit.minimize_witness(witness), witness)

    def test_p7_unchanged(self):
        m2 = self.space(2)
        fixture = Fixture(m2, self.singleton(m2, '1/2', '1/2'),
                          m2.event('1'))
        verdict = check_core_postulate('P7', 'trivial', [fixture])
        self.assertIsInstance(verdict, Fail)
        self.assertIs(audit.minimize_witness(verdict.witness),
                      verdict.witness)


class RunMatrixTest(bt.BaseTest):
    """Test a small audit"""

    def setUp(self):
        super(RunMatrixTest, self).setUp()
        self.cfg = audit.default_audit_config(
            max_atoms=2, grid_denominators=(1, 2), family_depth=3,
            rules=('cond', 'trivial'), nprocs=1)

    def test_report(self):
        report = audit.run_matrix(self.cfg)
        self.assertEqual(len(report.matrix), 2 * len(POSTULATES))
        self.assertIsInstance(report.matrix[('cond', 'P1')], Pass)
        self.assertIsInstance(report.matrix[('trivial', 'P4')], Fail)
        self.assertIsInstance(report.matrix[('trivial', 'P7')], Fail)
        self.assertNotIn('trivial',
                         report.characterization['survivors_p1_p7'])
        d = audit.report_to_json(report)
        self.assertEqual(
            list(d), ['config', 'matrix', 'supprob_tables',
                      'emptiness_census', 'propositions', 'characterization',
                      'provenance'])
        census = d['emptiness_census']
        self.assertEqual(census['cond']['empty'], 0)
        self.assertEqual(census['trivial']['empty'],
                         census['trivial']['fixtures'])
        self.assertEqual(d['provenance']['pool']['measures'], 4)
        # the grid (1, 2) only holds the point 1/2
        self.assertEqual(d['supprob_tables']['cond'], [])

    def test_deterministic(self):
        first = audit.dumps_report(audit.run_matrix(self.cfg))
        second = audit.dumps_report(audit.run_matrix(self.cfg))
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)['config']['rules'],
                         ['cond', 'trivial'])

    def test_compare(self):
        d = audit.report_to_json(audit.run_matrix(self.cfg))
        table = audit.verdict_table(d)
        self.assertEqual(table['cond']['P1'], 'pass')
        self.assertEqual(audit.compare_with_expected(d, {
            'cond': {'P1': 'pass'}, 'trivial': {'P7': 'fail'},
            'forget': {'P3': 'fail'}}), [])
        mismatches = audit.compare_with_expected(
            d, {'trivial': {'P7': 'pass'}})
        self.assertEqual(mismatches,
                         ['trivial P7: expected pass, found fail'])


class GoldenTest(bt.BaseTest):
    """Compare the full default audit with the golden matrix"""

    def test_golden(self):
        if not bt.full_audit:
            self.skipTest('Run with --full-audit')
        from credalaudit.main import load_expected
        report = audit.run_matrix(audit.default_audit_config())
        mismatches = audit.compare_with_expected(
            audit.report_to_json(report), load_expected('golden'))
        self.assertEqual(mismatches, [])


if __name__ == '__main__':
    unittest.main()
