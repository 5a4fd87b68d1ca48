"""Command line interface of credalaudit

The :class:`CredalAuditOrganizer` holds one method per command. The
:class:`model_organization.ModelOrganizer` base class generates the parser of
each command from the signature and the docstring of the method, the
corresponding ``_modify_<command>`` method adjusts it afterwards."""
from __future__ import print_function, division
import os.path as osp
import sys
import json
import logging
from collections import OrderedDict
import yaml
from model_organization import ModelOrganizer
from model_organization.config import setup_logging
import credalaudit.utils as utils
from credalaudit.utils import docstrings, CredalAuditError, InputError


#: The space of the ``update`` and ``supprob`` commands if none is given
DEFAULT_SPACE = '["a","b","c"]'

#: The queries of the ``belief`` command
BELIEF_QUERIES = ('bel', 'dempster', 'envelope', 'vertices', 'gs')

#: Path to the checked-in expected verdicts of the default audit
GOLDEN_MATRIX = osp.join(osp.dirname(__file__), 'data', 'golden_matrix.yaml')


def _comma_list(s):
    return [v.strip() for v in s.split(',') if v.strip()]


def parse_grid(s):
    """Grid denominators from ``'N'`` (meaning ``1..N``) or ``'1,2,4'``"""
    try:
        if ',' in s:
            return tuple(sorted(set(int(v) for v in _comma_list(s))))
        return tuple(range(1, int(s) + 1))
    except ValueError:
        raise InputError("Invalid grid %r" % (s, ))


def load_expected(expect):
    """The expected verdicts from a YAML file or the packaged golden file"""
    path = GOLDEN_MATRIX if expect == 'golden' else expect
    if not osp.exists(path):
        raise InputError("Expected matrix %s does not exist" % (path, ))
    with open(path) as f:
        try:
            ret = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InputError("Invalid YAML in %s: %s" % (path, e))
    if not isinstance(ret, dict):
        raise InputError("%s does not map rules to verdicts" % (path, ))
    return ret


def _kind(x):
    from credalaudit.measures import FiniteSet, Polytope
    if isinstance(x, FiniteSet):
        return 'finite'
    elif isinstance(x, Polytope):
        return 'polytope'
    return 'derived'


class CredalAuditOrganizer(ModelOrganizer):
    """
    A class for running the commands of credalaudit

    Every command is a method of this class that prints its result to
    :attr:`stream`. A command that detects a mismatch sets
    :attr:`exit_code`"""

    #: The commands in the order of the help
    commands = ['update', 'supprob', 'audit', 'belief', 'render']

    name = 'credalaudit'

    #: The exit code of the last commands, 1 if verdicts differ from the
    #: expected ones
    exit_code = 0

    _logger = None

    def __init__(self, config=None, stream=None):
        super(CredalAuditOrganizer, self).__init__(config)
        self._stream = stream
        self.exit_code = 0

    @property
    def stream(self):
        """The stream for the output of the commands"""
        return self._stream or sys.stdout

    @property
    def logger(self):
        """The logger of this organizer"""
        if self._logger is None:
            self._logger = logging.getLogger(
                '.'.join([__name__, self.__class__.__name__]))
        return self._logger

    @logger.setter
    def logger(self, value):
        self._logger = value

    def _print(self, obj):
        if not isinstance(obj, str):
            obj = json.dumps(obj, indent=2)
        print(obj, file=self.stream)

    # -------------------------------------------------------------------------
    # ------------------------------- Updates ---------------------------------
    # -------------------------------------------------------------------------

    @docstrings.dedent
    def update(self, rule=None, space=DEFAULT_SPACE, x=None, measure=None,
               evidence=None, push=None, push_result=False, pointwise=False,
               **kwargs):
        """
        Update a credal set and print the result

        Parameters
        ----------
        rule: str
            The update rule, one of cond, constrain, forget, trivial, closure,
            subset, ml or ``classical:<selector>``
        space: str
            The labels of the atoms as JSON list
        x: str
            The credal set as JSON (a list of measures, a list of
            constraints, ``{"constraints": [...]}`` or a derived set). If
            not given, the singleton of `measure` is used
        measure: str
            ``'uniform'``, a tuple such as ``'(1/4,1/4,1/2)'`` or a JSON
            object mapping labels to rationals. Default: uniform
        evidence: str
            The evidence as JSON list of labels. May be given several times
            for successive updates
        push: str
            A representation shift as JSON object with keys ``source``,
            ``target`` and ``map``. The evidence is then given on the target
            space
        push_result: bool
            If set, update with the preimages of the evidence and push the
            result forward instead of updating the pushforward
        pointwise: bool
            If set, compute the union of the updates of the members
        ``**kwargs``
            Keyword arguments passed to the :meth:`app_main` method
        """
        self.app_main(**kwargs)
        from credalaudit.measures import (
            FiniteSet, loads, space_from_json, credal_from_json,
            parse_measure, event_from_json, shift_from_json, pushforward_set,
            preimage)
        from credalaudit.rules import get_rule, iterate_updates
        if not rule:
            raise InputError("No update rule given")
        rule = get_rule(rule)
        space = space_from_json(loads(space, 'space'))
        if x is not None:
            x = credal_from_json(space, loads(x, 'credal set'))
        else:
            x = FiniteSet(space, [parse_measure(space, measure or 'uniform')])
        shift = None
        if push is not None:
            shift = shift_from_json(loads(push, 'shift'))
            if shift.source != space:
                raise InputError("The shift starts on %s, not on %s" % (
                    shift.source.to_json(), space.to_json()))
        target = shift.target if shift is not None else space
        events = [event_from_json(target, e) for e in evidence or []]
        if shift is not None and push_result:
            events = [preimage(shift, b) for b in events]
        elif shift is not None:
            x = pushforward_set(shift, x)
        self.logger.debug('Updating %r with %s by %s', x, events, rule)
        if pointwise:
            notes = []
            for b in events:
                x = rule.lift_pointwise(x, b)
        else:
            x, notes = iterate_updates(rule, x, events)
        if shift is not None and push_result:
            x = pushforward_set(shift, x)
        ret = OrderedDict([('kind', _kind(x)), ('space', x.space.to_json()),
                           ('result', x.to_json()), ('notes', list(notes))])
        if ret['kind'] == 'derived':
            try:
                ret['members'] = [pr.to_json() for pr in x.candidates()]
            except CredalAuditError as e:
                self.logger.debug('No members sampled: %s', e)
        self._print(ret)

    def _modify_update(self, parser):
        parser.update_arg('rule', short='r')
        parser.update_arg('space', short='s')
        parser.update_arg('x', short=None, long='x')
        parser.update_arg('measure', short='m')
        parser.update_arg('evidence', short='e', action='append')
        parser.update_arg('push', short='p')
        parser.update_arg('push_result', short='pr', long='push-result',
                          dest='push_result', action='store_true')
        parser.pop_key('push_result', 'metavar', None)
        parser.update_arg('pointwise', short='pw', action='store_true')
        parser.pop_key('pointwise', 'metavar', None)

    @docstrings.dedent
    def supprob(self, rule=None, measure=None, a=None, b=None,
                space=DEFAULT_SPACE, **kwargs):
        """
        Print the supremum of ``Pr'(a) / Pr(a|b)`` over an update

        Parameters
        ----------
        rule: str
            The update rule
        measure: str
            The measure, see the `measure` argument of the ``update``
            command
        a: str
            The subevent of `b` as JSON list of labels
        b: str
            The evidence as JSON list of labels
        space: str
            The labels of the atoms as JSON list
        ``**kwargs``
            Keyword arguments passed to the :meth:`app_main` method
        """
        self.app_main(**kwargs)
        from credalaudit.measures import (
            loads, space_from_json, parse_measure, event_from_json)
        from credalaudit.postulates import supprob_eval, format_value
        if not rule or a is None or b is None:
            raise InputError("The rule and the events a and b are required")
        space = space_from_json(loads(space, 'space'))
        pr = parse_measure(space, measure or 'uniform')
        value = supprob_eval(rule, space, pr, event_from_json(space, a),
                             event_from_json(space, b))
        self._print(format_value(value))

    def _modify_supprob(self, parser):
        parser.update_arg('rule', short='r')
        parser.update_arg('a', short=None, long='a')
        parser.update_arg('b', short=None, long='b')
        parser.update_arg('measure', short='m')
        parser.update_arg('space', short='s')

    # -------------------------------------------------------------------------
    # -------------------------------- Audits ---------------------------------
    # -------------------------------------------------------------------------

    @docstrings.dedent
    def audit(self, rules='all', max_atoms=4, grid='4', family_depth=8,
              threshold='100', seed=0, random=0, out=None, expect=None,
              jobs=None, **kwargs):
        """
        Audit the update rules against the postulates

        Parameters
        ----------
        rules: str
            ``'all'`` or a comma separated list of rule names
        max_atoms: int
            The largest number of atoms of the fixture spaces
        grid: str
            The grid denominators: ``N`` for ``1..N`` or a comma separated
            list
        family_depth: int
            The largest space of the divergence probe
        threshold: str
            Family constants above this rational count as diverging
        seed: int
            The seed of the random fixtures
        random: int
            The number of additional random measures per space
        out: str
            The path of the JSON report. If not given, the report is printed
        expect: str
            A YAML file with the expected verdicts or ``'golden'`` for the
            packaged ones. The exit code is 1 if the verdicts differ
        jobs: int
            The number of worker processes (capped by the
            ``CREDAL_AUDIT_JOBS`` environment variable)
        ``**kwargs``
            Keyword arguments passed to the :meth:`app_main` method
        """
        self.app_main(**kwargs)
        from credalaudit.audit import (
            default_audit_config, run_matrix, report_to_json, dumps_report,
            compare_with_expected)
        from credalaudit.rules import RULE_NAMES
        from credalaudit.utils import to_rational
        rules = RULE_NAMES if rules == 'all' else tuple(_comma_list(rules))
        expected = load_expected(expect) if expect else None
        cfg = default_audit_config(
            max_atoms=max_atoms, grid_denominators=parse_grid(grid),
            family_depth=family_depth,
            divergence_threshold=to_rational(threshold), rng_seed=seed,
            random_fixtures=random, rules=rules, nprocs=jobs)
        report = report_to_json(run_matrix(cfg))
        text = dumps_report(report)
        if out:
            with open(out, 'w') as f:
                f.write(text)
            self.logger.info('Report written to %s', out)
        else:
            self.stream.write(text)
        if expected is not None:
            mismatches = compare_with_expected(report, expected)
            for msg in mismatches:
                self.logger.error(msg)
            if mismatches:
                self.exit_code = 1
                return
            self.logger.info('All verdicts match the expected matrix')

    def _modify_audit(self, parser):
        parser.update_arg('rules', short='R')
        parser.update_arg('max_atoms', short='n', long='max-atoms',
                          dest='max_atoms', type=int)
        parser.update_arg('grid', short='g')
        parser.update_arg('family_depth', short='d', long='family-depth',
                          dest='family_depth', type=int)
        parser.update_arg('threshold', short='t')
        parser.update_arg('seed', short='S', type=int)
        parser.update_arg('random', short='rn', type=int)
        parser.update_arg('out', short='o')
        parser.update_arg('expect', short='x')
        parser.update_arg('jobs', short='j', type=int)

    # -------------------------------------------------------------------------
    # ---------------------------- Belief functions ---------------------------
    # -------------------------------------------------------------------------

    @docstrings.dedent
    def belief(self, query, mass=None, x=None, a=None, b=None, given=None,
               space=DEFAULT_SPACE, **kwargs):
        """
        Query belief functions and the lower envelopes of credal sets

        Parameters
        ----------
        query: str
            ``'bel'`` (belief and plausibility of `a`), ``'dempster'``
            (Dempster's conditioning of `a` on `b`), ``'envelope'`` (the
            lower envelope of `a`, optionally given `given`), ``'vertices'``
            or ``'gs'`` (the conditions of Gilboa and Schmeidler)
        mass: str
            The mass function as JSON list of ``{"event": [...], "mass":
            "p/q"}``
        x: str
            A credal set as JSON. If not given, the measures dominating
            the belief function of `mass` are used
        a: str
            An event as JSON list of labels
        b: str
            The evidence of ``'dempster'``
        given: str
            The conditioning event of ``'envelope'``
        space: str
            The labels of the atoms as JSON list
        ``**kwargs``
            Keyword arguments passed to the :meth:`app_main` method
        """
        self.app_main(**kwargs)
        from credalaudit.measures import (
            loads, space_from_json, credal_from_json, event_from_json,
            polytope_vertices, credal_closure, FiniteSet)
        from credalaudit.belief import (
            mass_from_json, dominated_set, lower_envelope,
            dempster_conditional, gs_check)
        from credalaudit.utils import format_rational
        space = space_from_json(loads(space, 'space'))
        bel = mass_from_json(space, mass).view() if mass else None

        def event(obj, name):
            if obj is None:
                raise InputError("The %s command needs the event %s" % (
                    query, name))
            return event_from_json(space, obj)

        def credal():
            if x is not None:
                return credal_from_json(space, loads(x, 'credal set'))
            elif bel is None:
                raise InputError("Either a mass function or a credal set is "
                                 "required")
            return dominated_set(bel)

        if query in ('bel', 'dempster') and bel is None:
            raise InputError("The %s command needs a mass function" % query)
        if query == 'bel':
            e = event(a, 'a')
            ret = OrderedDict([('bel', format_rational(bel.bel(e))),
                               ('pl', format_rational(bel.pl(e)))])
        elif query == 'dempster':
            lower, upper = dempster_conditional(
                bel, event(a, 'a'), event(b, 'b'))
            ret = OrderedDict([('lower', format_rational(lower)),
                               ('upper', format_rational(upper))])
        elif query == 'envelope':
            cond = event_from_json(space, given) if given else None
            ret = format_rational(lower_envelope(
                credal(), event(a, 'a'), cond))
        elif query == 'vertices':
            closure = credal_closure(credal())
            if isinstance(closure, FiniteSet):
                ret = [pr.to_json() for pr in closure]
            else:
                ret = [pr.to_json() for pr in polytope_vertices(closure)]
        else:
            res = gs_check(credal())
            ret = OrderedDict([('ok', res.ok),
                               ('diagnostics', res.diagnostics)])
        self._print(ret)

    def _modify_belief(self, parser):
        parser.pop_arg('query')
        parser.add_argument('query', choices=BELIEF_QUERIES,
                            help='The query')
        for arg in ['x', 'a', 'b']:
            parser.update_arg(arg, short=None, long=arg)
        parser.update_arg('mass', short='m')
        parser.update_arg('given', short='c')
        parser.update_arg('space', short='s')

    # -------------------------------------------------------------------------
    # -------------------------------- Reports --------------------------------
    # -------------------------------------------------------------------------

    @docstrings.dedent
    def render(self, report, fmt='markdown', output=None, **kwargs):
        """
        Render an audit report

        Parameters
        ----------
        report: str
            The path of the JSON report of the ``audit`` command
        fmt: str
            The output format, ``'markdown'`` or ``'json'``
        output: str
            The output file. If not given, the rendering is printed
        ``**kwargs``
            Keyword arguments passed to the :meth:`app_main` method
        """
        self.app_main(**kwargs)
        from credalaudit.measures import loads
        from credalaudit.report import render_report
        if not osp.exists(report):
            raise InputError("Report %s does not exist" % (report, ))
        with open(report) as f:
            report_json = loads(f.read(), report)
        text = render_report(report_json, fmt)
        if output:
            with open(output, 'w') as f:
                f.write(text)
        else:
            self.stream.write(text)

    def _modify_render(self, parser):
        parser.pop_arg('report')
        parser.add_argument('report', help='The path of the JSON report')
        parser.update_arg('fmt', short='f', long='format', dest='fmt',
                          choices=['markdown', 'json'])
        parser.update_arg('output', short='o')

    # -------------------------------------------------------------------------
    # --------------------------------- Main ----------------------------------
    # -------------------------------------------------------------------------

    @classmethod
    def main(cls, args=None, stream=None):
        """
        Run the commands given on the command line

        Parameters
        ----------
        args: list of str
            The command line arguments. If None, :data:`sys.argv` is used
        stream: file-like
            The output stream. If None, :data:`sys.stdout` is used

        Returns
        -------
        int
            The exit code: 0 for success, 1 for verdicts that differ from
            the expected ones and 2 for invalid input"""
        setup_logging(utils.LOGGING_CONFIG, env_key=utils.LOG_CFG_ENV)
        organizer = cls(stream=stream)
        try:
            organizer.parse_args(args)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2
        except CredalAuditError as e:
            organizer.logger.error('%s: %s', type(e).__name__, e)
            return 2
        return organizer.exit_code


def _get_parser():
    """Function returning the credalaudit parser"""
    return CredalAuditOrganizer.get_parser()


def main(args=None):
    """Call the :meth:`~credalaudit.main.CredalAuditOrganizer.main` method of
    the :class:`CredalAuditOrganizer` class"""
    return CredalAuditOrganizer.main(args)


if __name__ == '__main__':
    sys.exit(main())
