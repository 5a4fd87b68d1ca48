"""Test module for the :mod:`credalaudit.report` module"""
import json
import unittest
from credalaudit.utils import InputError
from credalaudit.measures import Measure, FiniteSet, RepShift, grid_measures
from credalaudit.postulates import (
    Fixture, Witness, check_core_postulate, check_p6, witness_to_json)
from credalaudit.report import (
    render_report, witness_commands, family_commands, SYMBOLS)
import credalaudit.audit as audit
import _base_testing as bt


class WitnessCommandsTest(bt.BaseTest):
    """Test the replay commands of witnesses"""

    def witness(self, postulate, fixture, rule='cond'):
        return witness_to_json(Witness(postulate, rule, fixture, [], [],
                                       None))

    def test_p2(self):
        m3, m2 = self.space(3), self.space(2)
        shift = RepShift(m3, m2, [0, 0, 1])
        fixture = Fixture(m3, FiniteSet(m3, [Measure.uniform(m3)]),
                          m2.event('1'), shift=shift)
        lhs, rhs = witness_commands(self.witness('P2', fixture))
        self.assertEqual(lhs[:3], ['update', '--rule', 'cond'])
        self.assertIn('--push', lhs)
        self.assertNotIn('--push-result', lhs)
        self.assertEqual(rhs, lhs[:-2] + ['--push-result'] + lhs[-2:])
        self.assertEqual(json.loads(lhs[lhs.index('--push') + 1]),
                         shift.to_json())

    def test_p3(self):
        m3 = self.space(3)
        fixture = Fixture(m3, FiniteSet(m3, [Measure.uniform(m3)]),
                          m3.event('12'), m3.event('23'))
        lhs, rhs = witness_commands(self.witness('P3', fixture, 'forget'))
        self.assertEqual(lhs.count('--evidence'), 2)
        self.assertEqual(json.loads(rhs[-1]), ['2'])

    def test_p5(self):
        m2 = self.space(2)
        fixture = Fixture(m2, self.singleton(m2, '1/2', '1/2'),
                          m2.event('1'))
        lhs, rhs = witness_commands(self.witness('P5', fixture))
        self.assertEqual(rhs, lhs + ['--pointwise'])

    def test_other(self):
        m2 = self.space(2)
        fixture = Fixture(m2, self.singleton(m2, 1, 0), m2.event('1'))
        self.assertEqual(len(witness_commands(self.witness('P4', fixture))),
                         1)
        self.assertEqual(witness_commands(self.witness(
            'P4', fixture, 'lower envelope')), [])


class FamilyCommandsTest(bt.BaseTest):
    """Test the replay of witnesses on the family of uniform measures"""

    def arg(self, argv, name):
        return json.loads(argv[argv.index(name) + 1])

    def test_subset(self):
        cfg = audit.default_audit_config(
            max_atoms=3, grid_denominators=(1, 2), family_depth=6)
        verdict = check_p6('subset', cfg, grid_measures(self.space(3), 2))
        witness = witness_to_json(verdict["P6''"].witness)
        commands = witness_commands(witness)
        self.assertEqual(len(commands), 5)
        for n, argv in enumerate(commands, 2):
            self.assertEqual(argv[:3], ['supprob', '--rule', 'subset'])
            self.assertEqual(self.arg(argv, '--space'),
                             [str(i) for i in range(1, n + 1)])
            self.assertEqual(argv[argv.index('--measure') + 1], 'uniform')
            self.assertLessEqual(set(self.arg(argv, '--a')),
                                 set(self.arg(argv, '--b')))
        self.assertNotIn('--evidence', sum(commands, []))

    def test_forget(self):
        commands = family_commands('forget', 3)
        self.assertEqual([self.arg(argv, '--b') for argv in commands],
                         [['1', '2'], ['1', '2', '3'], ['1', '2', '3', '4']])

    def test_markdown(self):
        cfg = audit.default_audit_config(
            max_atoms=3, grid_denominators=(1, 2), family_depth=4)
        verdict = check_p6('subset', cfg, grid_measures(self.space(3), 2))
        text = render_report({'matrix': [dict(
            rule='subset', postulate="P6''", verdict='fail',
            label=verdict["P6''"].label,
            witness=witness_to_json(verdict["P6''"].witness))]})
        self.assertEqual(text.count('credalaudit supprob --rule subset'), 3)
        self.assertNotIn('credalaudit update', text)


class RenderTest(bt.BaseTest):
    """Test the rendering of reports"""

    def report(self):
        m2 = self.space(2)
        fixture = Fixture(m2, self.singleton(m2, '1/2', '1/2'),
                          m2.event('1'))
        cfg = audit.default_audit_config(max_atoms=2, rules=(
            'cond', 'constrain'))
        matrix = {('cond', 'P7'): check_core_postulate('P7', 'cond',
                                                       [fixture]),
                  ('constrain', 'P7'): check_core_postulate(
                      'P7', 'constrain', [fixture])}
        return audit.AuditReport(cfg, matrix, {}, {}, {}, {}, {})

    def test_empty(self):
        text = render_report({'matrix': []})
        lines = text.splitlines()
        self.assertEqual(lines[0], '# Audit of update rules')
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[2].startswith('| rule | P1 |'))

    def test_markdown(self):
        text = render_report(self.report())
        self.assertIn('| cond | %s |' % ' | '.join(
            [SYMBOLS['inconclusive']] * 8 + [SYMBOLS['pass']]), text)
        self.assertIn('| constrain |', text)
        self.assertIn(SYMBOLS['fail'], text)
        self.assertIn('## Witnesses', text)
        self.assertIn('### constrain P7', text)
        self.assertIn('credalaudit update --rule constrain', text)
        self.assertNotIn('### cond P7', text)

    def test_json(self):
        report = self.report()
        self.assertEqual(render_report(report, 'json'),
                         audit.dumps_report(report))

    def test_unknown_format(self):
        with self.assertRaises(InputError):
            render_report({'matrix': []}, 'html')


if __name__ == '__main__':
    unittest.main()
