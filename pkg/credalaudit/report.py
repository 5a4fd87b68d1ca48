"""Rendering of audit reports

The markdown rendering holds one verdict table (rules as rows, postulates as
columns) and an appendix with the witnesses of all failures together with
the ``credalaudit update`` and ``credalaudit supprob`` calls that replay
them."""
import json
import shlex
import logging
from collections import OrderedDict
import pandas as pd
from credalaudit.utils import docstrings, InputError
from credalaudit.measures import MeasureSpace, Measure
from credalaudit.postulates import POSTULATES, UNBOUNDED, p6_argmax
from credalaudit.rules import RULE_NAMES
from credalaudit.audit import AuditReport, report_to_json, dumps_report


logger = logging.getLogger(__name__)


#: Table cells of the verdicts
SYMBOLS = {'pass': '✓', 'fail': '✗', 'inconclusive': '–'}

#: Supported output formats of :func:`render_report`
FORMATS = ('markdown', 'json')


def _dumps(obj):
    return json.dumps(obj, separators=(',', ':'))


def _intersection(space, b, c):
    return [a for a in space if a in b and a in c]


def family_commands(rule, size):
    """
    ``supprob`` calls for the constants of the uniform measures on M_2, ...

    A member whose constant is unbounded is replayed by an ``update`` call
    that shows the positive probability outside of the evidence.

    Parameters
    ----------
    rule: str
        The name of the update rule
    size: int
        The number of members of the family

    Returns
    -------
    list of list of str
        One argument list per member"""
    ret = []
    for n in range(2, size + 2):
        space = MeasureSpace.standard(n)
        c, b, atom = p6_argmax(rule, Measure.uniform(space))
        if b is None:  # every update is empty
            continue
        common = ['--rule', rule, '--space', _dumps(space.to_json()),
                  '--measure', 'uniform']
        if c == UNBOUNDED:
            ret.append(['update'] + common + [
                '--evidence', _dumps(b.to_json())])
        else:
            ret.append(['supprob'] + common + [
                '--a', _dumps(atom.to_json()), '--b', _dumps(b.to_json())])
    return ret


def witness_commands(witness):
    """
    Command lines that reproduce the two sides of a witness

    Parameters
    ----------
    witness: dict
        The JSON encoding of a :class:`credalaudit.postulates.Witness`

    Returns
    -------
    list of list of str
        The arguments of ``credalaudit`` for the observed side and, where the
        postulate compares two computed sets, for the expected side. For a
        witness on the family of uniform measures, one call per member (see
        :func:`family_commands`). Empty for witnesses of update operators
        that are not rules"""
    rule = witness['rule']
    if rule not in RULE_NAMES and not rule.startswith('classical:'):
        return []
    observed = witness['observed']
    if isinstance(observed, dict) and 'family' in observed:
        return family_commands(rule, len(observed['family']))
    fixture = witness['fixture']
    base = ['update', '--rule', rule, '--space', _dumps(fixture['space']),
            '--x', _dumps(fixture['x'])]
    b = ['--evidence', _dumps(fixture['b'])]
    postulate = witness['postulate']
    if postulate == 'P2':
        push = ['--push', _dumps(fixture['shift'])]
        return [base + push + b, base + push + ['--push-result'] + b]
    elif postulate == 'P3':
        both = _intersection(fixture['space'], fixture['b'], fixture['c'])
        return [base + b + ['--evidence', _dumps(fixture['c'])],
                base + ['--evidence', _dumps(both)]]
    elif postulate == 'P5':
        return [base + b, base + b + ['--pointwise']]
    return [base + b]


def _table(entries, rules):
    """The verdict symbols as a DataFrame with rules as index"""
    frame = pd.DataFrame(entries, columns=['rule', 'postulate', 'verdict'])
    table = frame.pivot(index='rule', columns='postulate', values='verdict')
    table = table.reindex(index=rules, columns=list(POSTULATES))
    return table.apply(lambda s: s.map(SYMBOLS)).fillna(SYMBOLS[
        'inconclusive'])


def _markdown_table(entries, rules):
    lines = ['| rule | %s |' % ' | '.join(POSTULATES),
             '|%s' % ('---|' * (len(POSTULATES) + 1))]
    if not entries:
        return lines
    table = _table(entries, rules)
    for rule, row in table.iterrows():
        lines.append('| %s | %s |' % (rule, ' | '.join(row.tolist())))
    return lines


def _witness_section(entry):
    witness = entry['witness']
    head = '### %s %s' % (entry['rule'], entry.get('postulate') or
                          entry.get('proposition'))
    lines = [head, '']
    if entry.get('label'):
        lines += ['Label: %s' % entry['label'], '']
    lines += ['```json', json.dumps(witness['fixture'], indent=2), '```', '',
              '- observed: `%s`' % _dumps(witness['observed']),
              '- expected: `%s`' % _dumps(witness['expected'])]
    if witness.get('distinguishing_measure') is not None:
        lines.append('- distinguishing measure: `%s`' % _dumps(
            witness['distinguishing_measure']))
    commands = witness_commands(witness)
    if commands:
        lines += ['', 'Replay:', '', '```sh']
        lines += ['credalaudit ' + ' '.join(map(shlex.quote, argv))
                  for argv in commands]
        lines.append('```')
    return lines + ['']


@docstrings.dedent
def render_report(report, fmt='markdown'):
    """
    Render an audit report

    Parameters
    ----------
    report: credalaudit.audit.AuditReport or dict
        The report or its JSON encoding
    fmt: {'markdown', 'json'}
        The output format

    Returns
    -------
    str
        The rendered report"""
    if isinstance(report, AuditReport):
        report = report_to_json(report)
    if fmt == 'json':
        return dumps_report(report)
    elif fmt != 'markdown':
        raise InputError("Unknown format %r, expected one of %s" % (
            fmt, ', '.join(FORMATS)))
    entries = report.get('matrix', [])
    rules = list(report.get('config', {}).get('rules') or
                 OrderedDict.fromkeys(e['rule'] for e in entries))
    lines = ['# Audit of update rules', '']
    lines += _markdown_table(entries, rules)
    characterization = report.get('characterization')
    if characterization:
        lines += ['', '## Characterization', '',
                  '- survivors of P1-P6: %s' % ', '.join(
                      characterization['survivors_p1_p6']),
                  '- survivors of P1-P7: %s' % ', '.join(
                      characterization['survivors_p1_p7'])]
        conjecture = characterization.get('conjecture')
        if conjecture:
            lines.append('- %s (%s)' % (conjecture['statement'],
                                        conjecture['status']))
    failures = [e for e in entries if e['verdict'] == 'fail' and
                e.get('witness')]
    if failures:
        lines += ['', '## Witnesses', '']
        for entry in failures:
            lines += _witness_section(entry)
    logger.debug('Rendered %i verdicts with %i witnesses', len(entries),
                 len(failures))
    return '\n'.join(lines).rstrip('\n') + '\n'
