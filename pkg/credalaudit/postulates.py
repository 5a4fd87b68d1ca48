"""Checks of the postulates for update rules

This module contains the fixtures and verdicts of an audit, one checker class
per postulate (including the three variants of the continuity postulate),
the functionals ``p6_constant`` and ``supprob_eval`` and the checks of the
derived propositions that hold for rules satisfying certain postulates.

Every verdict is a statement about the checked fixtures: a :class:`Pass`
means that no counterexample has been found, never that the postulate has
been proven."""
import abc
import logging
from collections import namedtuple, OrderedDict
from fractions import Fraction
from functools import lru_cache
from itertools import chain
from credalaudit.utils import (
    docstrings, append_doc, RegistryMeta, format_rational,
    UnsupportedRepresentation, DimensionTooLarge, MalformedFixture,
    PreconditionViolated, HypothesisNotMet, InputError)
from credalaudit.measures import (
    MeasureSpace, Measure, FiniteSet, conditional, grid_measures,
    preimage, pushforward_set, credal_equal_probe, Differ,
    space_from_json, event_from_json, measure_from_json, credal_from_json,
    shift_from_json)
from credalaudit.rules import get_rule, rule_name, iterate_updates


logger = logging.getLogger(__name__)


#: Value of :func:`p6_constant` if no constant exists
UNBOUNDED = 'unbounded'

#: Value of :func:`supprob_eval` for an empty update
NEG_INFINITY = '-inf'

#: Label of failures that are only observed in the limit of growing spaces
INFINITE_SPACE_LIMIT = 'infinite-space-limit'

#: The epsilons of the continuity probe
EPSILONS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 10))

#: Identifiers of the postulates in report order
POSTULATES = ('P1', 'P2', 'P3', 'P4', 'P5', "P6'", "P6''", 'P6*', 'P7')

#: Postulates checked by :func:`check_core_postulate`
CORE_POSTULATES = ('P1', 'P2', 'P3', 'P4', 'P5', 'P7')


def format_value(value):
    """Format a rational, ``'unbounded'`` or ``'-inf'`` for a report"""
    if value in (UNBOUNDED, NEG_INFINITY):
        return value
    return format_rational(value)


def _rank(value):
    """Sort key of values that may be ``'-inf'``"""
    return (0, 0) if value == NEG_INFINITY else (1, value)


# -----------------------------------------------------------------------------
# --------------------------- Fixtures and verdicts ---------------------------
# -----------------------------------------------------------------------------


Fixture = namedtuple('Fixture', ['space', 'x', 'b', 'c', 'shift', 'a'])

Fixture.__new__.__defaults__ = (None, None, None)

Fixture = append_doc(Fixture, docstrings.get_sections("""
The arguments of one postulate check

Parameters
----------
space: credalaudit.measures.MeasureSpace
    The space of `x`
x: credalaudit.measures.CredalSet
    The set to update
b: credalaudit.measures.Event
    The evidence. If `shift` is given, the evidence lives on the target space
    of the shift
c: credalaudit.measures.Event
    The second evidence for the commutation of updates
shift: credalaudit.measures.RepShift
    The representation shift starting at `space`
a: credalaudit.measures.Event
    An event that is probed after the update
""", 'Fixture'))


def fixture_to_json(fixture):
    ret = OrderedDict([('space', fixture.space.to_json()),
                       ('x', fixture.x.to_json()),
                       ('b', fixture.b.to_json())])
    if fixture.c is not None:
        ret['c'] = fixture.c.to_json()
    if fixture.shift is not None:
        ret['shift'] = fixture.shift.to_json()
    if fixture.a is not None:
        ret['a'] = fixture.a.to_json()
    return ret


def fixture_from_json(obj):
    """Decode a fixture encoded by :func:`fixture_to_json`"""
    try:
        space = space_from_json(obj['space'])
        x = credal_from_json(space, obj['x'])
        shift = shift_from_json(obj['shift']) if 'shift' in obj else None
        b = event_from_json(shift.target if shift else space, obj['b'])
    except (KeyError, TypeError) as e:
        raise InputError("Invalid fixture: %s" % (e, ))
    c = event_from_json(space, obj['c']) if 'c' in obj else None
    a = event_from_json(b.space, obj['a']) if 'a' in obj else None
    return Fixture(space, x, b, c, shift, a)


Witness = namedtuple('Witness', ['postulate', 'rule', 'fixture', 'observed',
                                 'expected', 'distinguishing_measure'])

Witness = append_doc(Witness, docstrings.get_sections("""
A replayable counterexample (or, for P7, a supporting example)

Parameters
----------
postulate: str
    The identifier of the postulate or proposition
rule: str
    The name of the update rule
fixture: Fixture
    The arguments that exhibit the discrepancy
observed: object
    The JSON encoding of what the rule produced
expected: object
    The JSON encoding of what the postulate requires
distinguishing_measure: credalaudit.measures.Measure
    A measure that is a member of exactly one of the compared sets, or None
""", 'Witness'))


def witness_to_json(witness):
    ret = OrderedDict([
        ('postulate', witness.postulate), ('rule', witness.rule),
        ('fixture', fixture_to_json(witness.fixture)),
        ('observed', witness.observed), ('expected', witness.expected)])
    if witness.distinguishing_measure is not None:
        ret['distinguishing_measure'] = \
            witness.distinguishing_measure.to_json()
    return ret


def witness_from_json(obj):
    fixture = fixture_from_json(obj['fixture'])
    measure = obj.get('distinguishing_measure')
    if measure is not None:
        space = fixture.shift.target if fixture.shift else fixture.space
        measure = measure_from_json(space, measure)
    return Witness(obj['postulate'], obj['rule'], fixture, obj['observed'],
                   obj['expected'], measure)


Pass = namedtuple('Pass', ['fixtures_checked', 'skipped', 'witness', 'notes'])

Pass.__new__.__defaults__ = (0, None, ())

Fail = namedtuple('Fail', ['witness', 'label'])

Fail.__new__.__defaults__ = (None, )

Inconclusive = namedtuple('Inconclusive', ['reason'])


def verdict_name(verdict):
    """``'pass'``, ``'fail'`` or ``'inconclusive'``"""
    return type(verdict).__name__.lower()


def verdict_to_json(verdict):
    ret = OrderedDict([('verdict', verdict_name(verdict))])
    if isinstance(verdict, Pass):
        ret['fixtures_checked'] = verdict.fixtures_checked
        ret['skipped'] = verdict.skipped
        if verdict.notes:
            ret['notes'] = list(verdict.notes)
    elif isinstance(verdict, Fail):
        if verdict.label:
            ret['label'] = verdict.label
    else:
        ret['reason'] = verdict.reason
    if getattr(verdict, 'witness', None) is not None:
        ret['witness'] = witness_to_json(verdict.witness)
    return ret


@lru_cache(maxsize=None)
def probe_grid(space):
    """The grid measures with denominators 1 and 2 used as probe candidates
    """
    return tuple(chain.from_iterable(
        grid_measures(space, d) for d in (1, 2)))


@lru_cache(maxsize=2 ** 16)
def update_measure(rule, pr, b):
    """The update of the singleton ``{pr}``"""
    return get_rule(rule).apply(FiniteSet(pr.space, [pr]), b).result


def singleton_fixtures(measures):
    """Fixtures ``({pr}, b)`` for all events ``b`` with ``pr(b) > 0``"""
    return [Fixture(pr.space, FiniteSet(pr.space, [pr]), b)
            for pr in measures for b in pr.space.events() if pr.prob(b) > 0]


def _single(fixture):
    measures = getattr(fixture.x, 'measures', ())
    if len(measures) != 1:
        raise MalformedFixture("Expected a singleton set, got %r" % (
            fixture.x, ))
    return measures[0]


def _member_with(x, predicate):
    """A member of `x` satisfying `predicate`, searched among candidates"""
    if isinstance(x, FiniteSet):
        pool = x.measures
    else:
        pool = (pr for pr in x.candidates() if x.contains(pr))
    return next((pr for pr in pool if predicate(pr)), None)


# -----------------------------------------------------------------------------
# --------------------------------- Checkers ----------------------------------
# -----------------------------------------------------------------------------


class Check(metaclass=RegistryMeta):
    """Abstract base class of a check that runs over a list of fixtures"""

    #: The identifier in reports
    name = None

    summary = None

    #: Fixture fields that must not be None
    requires = ()

    _logger = None

    @property
    def logger(self):
        """The logger of this check"""
        if self._logger is None:
            self.logger = None
        return self._logger

    @logger.setter
    def logger(self, value):
        if isinstance(value, str):
            value = logging.getLogger(value)
        elif value is None:
            value = logging.getLogger('.'.join(
                [__name__, self.__class__.__name__, self.name or '']))
        self._logger = value

    def validate(self, fixture):
        missing = [f for f in self.requires if getattr(fixture, f) is None]
        if missing:
            raise MalformedFixture("%s requires the fixture fields %s" % (
                self.name, ', '.join(missing)))

    def relevant(self, rule, fixture):
        """Whether the check says anything about `fixture`"""
        return True

    @abc.abstractmethod
    def check_fixture(self, rule, fixture):
        """
        Check one fixture

        Parameters
        ----------
        rule: credalaudit.rules.UpdateRule
            The rule to check
        fixture: Fixture
            The fixture

        Returns
        -------
        Witness or None
            The counterexample or None if the fixture satisfies the check"""

    def witness(self, rule, fixture, observed, expected, measure=None):
        return Witness(self.name, rule_name(rule), fixture, observed,
                       expected, measure)

    def run(self, rule, fixtures):
        """
        Run the check over a list of fixtures

        Fixtures whose representation is not supported by the rule are
        skipped and counted.

        Returns
        -------
        Pass or Fail or Inconclusive
            A :class:`Fail` with the first counterexample, a :class:`Pass` if
            there is none and :class:`Inconclusive` if no fixture has been
            checked"""
        rule = get_rule(rule)
        checked = skipped = 0
        for fixture in fixtures:
            self.validate(fixture)
            try:
                if not self.relevant(rule, fixture):
                    continue
                witness = self.check_fixture(rule, fixture)
            except (UnsupportedRepresentation, DimensionTooLarge) as e:
                self.logger.debug('Skipping fixture: %s', e)
                skipped += 1
                continue
            checked += 1
            if witness is not None:
                self.logger.debug('Counterexample for %s after %i fixtures',
                                  rule_name(rule), checked)
                return Fail(witness)
        if not checked:
            return Inconclusive('No applicable fixture (%i skipped)' % (
                skipped, ))
        return Pass(checked, skipped)


class PostulateCheck(Check):
    """Base class for the checkers of the postulates"""

    _registry = []


class SuccessCheck(PostulateCheck):
    """Every updated measure gives the evidence probability 1"""

    name = 'P1'

    summary = 'Every updated measure gives the evidence probability 1'

    def check_fixture(self, rule, fixture):
        b = fixture.b
        out = rule.apply(fixture.x, b).result
        if isinstance(out, FiniteSet):
            if all(pr.prob(b) == 1 for pr in out):
                return None
        elif not out.sup_prob(b.complement()):
            return None
        return self.witness(
            rule, fixture, out.to_json(),
            'every member gives the evidence probability 1',
            _member_with(out, lambda pr: pr.prob(b) != 1))


def _probe(check, rule, fixture, lhs, rhs):
    probe = credal_equal_probe(lhs, rhs, probe_grid(lhs.space))
    if isinstance(probe, Differ):
        return check.witness(rule, fixture, lhs.to_json(), rhs.to_json(),
                             probe.witness)
    return None


class RepresentationCheck(PostulateCheck):
    """Updating commutes with representation shifts"""

    name = 'P2'

    summary = 'Updates commute with representation shifts'

    requires = ('shift', )

    def sides(self, rule, fixture):
        f = fixture.shift
        lhs = rule.apply(pushforward_set(f, fixture.x), fixture.b).result
        rhs = pushforward_set(
            f, rule.apply(fixture.x, preimage(f, fixture.b)).result)
        return lhs, rhs

    def check_fixture(self, rule, fixture):
        return _probe(self, rule, fixture, *self.sides(rule, fixture))


class CommutationCheck(PostulateCheck):
    """Updating with b and then with c is updating with their intersection
    """

    name = 'P3'

    summary = 'Successive updates equal the update with the intersection'

    requires = ('c', )

    def sides(self, rule, fixture):
        lhs = iterate_updates(rule, fixture.x, [fixture.b, fixture.c]).result
        rhs = rule.apply(fixture.x, fixture.b & fixture.c).result
        return lhs, rhs

    def check_fixture(self, rule, fixture):
        return _probe(self, rule, fixture, *self.sides(rule, fixture))


class CertaintyCheck(PostulateCheck):
    """A set that is certain of the evidence is left unchanged"""

    name = 'P4'

    summary = 'Sets that are certain of the evidence are unchanged'

    def relevant(self, rule, fixture):
        return fixture.x.sup_prob(fixture.b.complement()) == 0

    def check_fixture(self, rule, fixture):
        out = rule.apply(fixture.x, fixture.b).result
        return _probe(self, rule, fixture, out, fixture.x)


class PointwiseCheck(PostulateCheck):
    """The update is the union of the updates of the members"""

    name = 'P5'

    summary = 'Updates are the union of the updates of the members'

    def sides(self, rule, fixture):
        return (rule.apply(fixture.x, fixture.b).result,
                rule.lift_pointwise(fixture.x, fixture.b))

    def check_fixture(self, rule, fixture):
        return _probe(self, rule, fixture, *self.sides(rule, fixture))


class UncertainEvidenceCheck(PostulateCheck):
    """Some set without a member certain of the evidence has a nonempty
    update

    Contrary to the other checks, a single fixture suffices to pass and the
    check fails if the whole pool has none."""

    name = 'P7'

    summary = 'Uncertain evidence may leave a nonempty update'

    def relevant(self, rule, fixture):
        x, b = fixture.x, fixture.b
        if isinstance(x, FiniteSet):
            return bool(x.measures) and all(pr.prob(b) != 1 for pr in x)
        return not x.is_empty() and x.restrict_prob(b, 'eq', 1).is_empty()

    def check_fixture(self, rule, fixture):
        out = rule.apply(fixture.x, fixture.b).result
        if out.is_empty():
            return self.witness(rule, fixture, out.to_json(),
                                'a nonempty set')
        return None

    def run(self, rule, fixtures):
        rule = get_rule(rule)
        checked = skipped = 0
        first = None
        for fixture in fixtures:
            try:
                if not self.relevant(rule, fixture):
                    continue
                out = rule.apply(fixture.x, fixture.b).result
                empty = out.is_empty()
            except (UnsupportedRepresentation, DimensionTooLarge) as e:
                self.logger.debug('Skipping fixture: %s', e)
                skipped += 1
                continue
            checked += 1
            if not empty:
                return Pass(checked, skipped, self.witness(
                    rule, fixture, out.to_json(), 'a nonempty set'))
            if first is None:
                first = self.witness(rule, fixture, out.to_json(),
                                     'a nonempty set')
        if first is None:
            return Inconclusive('No fixture without certain members')
        return Fail(first)


def get_check(name, registry=None):
    """Get the checker of a postulate or proposition by its identifier"""
    registry = registry or chain(PostulateCheck._registry,
                                 PropositionCheck._registry)
    for cls in registry:
        if cls.name == name:
            return cls()
    raise InputError("Unknown check %r" % (name, ))


@docstrings.dedent
def check_core_postulate(pid, rule, fixtures):
    """
    Check one of the postulates P1 to P5 and P7

    Parameters
    ----------
    pid: {'P1', 'P2', 'P3', 'P4', 'P5', 'P7'}
        The postulate
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    fixtures: list of Fixture
        The fixtures. P2 fixtures need a shift and P3 fixtures the second
        evidence `c`

    Returns
    -------
    Pass or Fail or Inconclusive
        The verdict

    Raises
    ------
    MalformedFixture
        If a fixture lacks a field required by the postulate"""
    if pid not in CORE_POSTULATES:
        raise InputError("%r is not one of %s" % (
            pid, ', '.join(CORE_POSTULATES)))
    return get_check(pid, PostulateCheck._registry).run(rule, fixtures)


# -----------------------------------------------------------------------------
# --------------------------- Continuity postulates ---------------------------
# -----------------------------------------------------------------------------


def _atom_ratios(rule, pr, b):
    """Yield ``(atom, ratio)`` of the least constant for one evidence"""
    out = update_measure(rule, pr, b)
    if out.is_empty():
        return
    q = conditional(pr, b)
    for i in range(pr.space.size):
        atom = pr.space.singleton(i)
        s = out.sup_prob(atom)
        if q.weights[i] == 0:
            if s > 0:
                yield atom, UNBOUNDED
        else:
            yield atom, s / q.weights[i]


def p6_argmax(rule, pr):
    """
    The least constant of the bounded-increase postulate with its arguments

    Returns
    -------
    fractions.Fraction or str
        The constant or ``'unbounded'``
    credalaudit.measures.Event
        The evidence attaining it (None if all updates are empty)
    credalaudit.measures.Event
        The atom attaining it"""
    rule = get_rule(rule)
    best = (Fraction(0), None, None)
    for b in pr.space.events():
        if pr.prob(b) == 0:
            continue
        for atom, ratio in _atom_ratios(rule, pr, b):
            if ratio == UNBOUNDED:
                return UNBOUNDED, b, atom
            if best[1] is None or ratio > best[0]:
                best = (ratio, b, atom)
    return best


@docstrings.dedent
def p6_constant(rule, space, pr):
    """
    The least constant ``c`` with ``Pr'(A) <= c Pr(A|B)``

    The maximum is taken over all events ``A`` and ``B`` with ``pr(B) > 0``
    and all members ``Pr'`` of the update of ``{pr}`` with ``B``. It suffices
    to consider the atoms as ``A`` because a ratio of sums is at most the
    largest ratio of the summands.

    Parameters
    ----------
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    space: credalaudit.measures.MeasureSpace
        The space of `pr`
    pr: credalaudit.measures.Measure
        The measure

    Returns
    -------
    fractions.Fraction or str
        The constant or ``'unbounded'`` if some ``Pr'(A) > 0`` while
        ``Pr(A|B) = 0``"""
    if pr.space != space:
        raise PreconditionViolated("Measure on %r, expected %r" % (
            pr.space, space))
    return p6_argmax(rule, pr)[0]


class SingleOutputCheck(PostulateCheck):
    """The update of a single measure has at most one member"""

    name = "P6'"

    summary = 'Updates of single measures have at most one member'

    def check_fixture(self, rule, fixture):
        out = update_measure(rule, _single(fixture), fixture.b)
        if isinstance(out, FiniteSet):
            if len(out) <= 1:
                return None
        elif out.is_empty() or all(
                out.sup_prob(atom) == out.inf(atom.indicator())
                for atom in map(out.space.singleton, range(out.space.size))):
            return None
        return self.witness(rule, fixture, out.to_json(),
                            'at most one measure')


class BoundedIncreaseCheck(PostulateCheck):
    """The update increases conditional probabilities by a bounded factor

    On a single fixture only an unbounded ratio is a counterexample, the
    growth of the constants is probed by :func:`check_p6`."""

    name = "P6''"

    summary = 'Updated probabilities are bounded by c times the conditional'

    def check_fixture(self, rule, fixture):
        pr = _single(fixture)
        for atom, ratio in _atom_ratios(rule, pr, fixture.b):
            if ratio == UNBOUNDED:
                out = update_measure(rule, pr, fixture.b)
                return self.witness(
                    rule, fixture._replace(a=atom), out.to_json(),
                    'no member with positive probability of a',
                    _member_with(out, lambda q: q.prob(atom) > 0))
        return None


class NullPreservationCheck(PostulateCheck):
    """Events that are conditionally null stay null after the update"""

    name = 'P6*'

    summary = 'Conditionally null events stay null'

    def check_fixture(self, rule, fixture):
        pr = _single(fixture)
        out = update_measure(rule, pr, fixture.b)
        if out.is_empty():
            return None
        q = conditional(pr, fixture.b)
        for i, w in enumerate(q.weights):
            atom = pr.space.singleton(i)
            if w == 0 and out.sup_prob(atom) > 0:
                return self.witness(
                    rule, fixture._replace(a=atom), out.to_json(),
                    'every member gives a probability 0',
                    _member_with(out, lambda m: m.prob(atom) > 0))
        return None


def family_constants(rule, depth):
    """:func:`p6_constant` for the uniform measures on M_2, ..., M_depth"""
    return [p6_constant(rule, space, Measure.uniform(space))
            for space in map(MeasureSpace.standard, range(2, depth + 1))]


def diverges(constants, threshold):
    """
    Decide whether the constants of the family grow without bound

    The sequence must be strictly increasing and either exceed `threshold`
    or have non-decreasing increments."""
    if len(constants) < 2 or UNBOUNDED in constants:
        return False
    increments = [b - a for a, b in zip(constants[:-1], constants[1:])]
    if any(d <= 0 for d in increments):
        return False
    if constants[-1] > threshold:
        return True
    return len(increments) >= 2 and all(
        d1 <= d2 for d1, d2 in zip(increments[:-1], increments[1:]))


def _family_witness(check, rule, depth, constants):
    space = MeasureSpace.standard(depth)
    pr = Measure.uniform(space)
    c, b, atom = p6_argmax(rule, pr)
    fixture = Fixture(space, FiniteSet(space, [pr]), b if b is not None
                      else space.full, a=atom)
    return check.witness(
        rule, fixture, {'family': list(map(format_value, constants))},
        'a bounded sequence of constants')


@docstrings.dedent
def check_p6(rule, cfg, measures=None):
    """
    Check the three continuity postulates and their disjunction

    Parameters
    ----------
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    cfg: credalaudit.audit.AuditConfig
        The configuration providing `family_depth` and
        `divergence_threshold`
    measures: list of credalaudit.measures.Measure
        The measures of the singleton fixtures. If None, the measure pool of
        `cfg` is used

    Returns
    -------
    collections.OrderedDict
        The verdicts of ``"P6'"``, ``"P6''"``, ``'P6*'`` and ``'P6'``"""
    rule = get_rule(rule)
    if measures is None:
        from credalaudit.audit import measure_pool
        measures = measure_pool(cfg)
    fixtures = singleton_fixtures(measures)
    ret = OrderedDict()
    ret["P6'"] = SingleOutputCheck().run(rule, fixtures)
    bound = BoundedIncreaseCheck()
    verdict = bound.run(rule, fixtures)
    if isinstance(verdict, Pass):
        constants = family_constants(rule, cfg.family_depth)
        if UNBOUNDED in constants:
            depth = constants.index(UNBOUNDED) + 2
            verdict = Fail(_family_witness(bound, rule, depth,
                                           constants[:depth - 1]))
        elif diverges(constants, cfg.divergence_threshold):
            verdict = Fail(_family_witness(
                bound, rule, cfg.family_depth, constants),
                INFINITE_SPACE_LIMIT)
        else:
            verdict = verdict._replace(notes=(
                'bound %s on the uniform family' % (
                    format_value(max(constants)), ), ))
    ret["P6''"] = verdict
    ret['P6*'] = NullPreservationCheck().run(rule, fixtures)
    single, bounded = ret["P6'"], ret["P6''"]
    if isinstance(single, Pass) or isinstance(bounded, Pass):
        holding = single if isinstance(single, Pass) else bounded
        ret['P6'] = Pass(holding.fixtures_checked, holding.skipped, None, (
            "P6' holds" if holding is single else "P6'' holds", ))
    elif isinstance(bounded, Fail):
        ret['P6'] = bounded
    else:
        ret['P6'] = single
    return ret


@docstrings.dedent
def continuity_probe(rule, measures, epsilons=EPSILONS):
    """
    Check that a finite constant yields the epsilon-delta continuity

    For every fixture with a finite constant ``c > 0`` and every epsilon,
    ``delta = eps * Pr(B) / (2 c)`` must satisfy: ``Pr(A|B) < delta``
    implies ``Pr'(A) < eps`` for all updated measures ``Pr'``.

    Parameters
    ----------
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    measures: list of credalaudit.measures.Measure
        The measures to probe
    epsilons: list of fractions.Fraction
        The epsilons

    Returns
    -------
    Pass or Fail or Inconclusive
        The verdict"""
    rule = get_rule(rule)
    checked = 0
    for pr in measures:
        c = p6_constant(rule, pr.space, pr)
        if c == UNBOUNDED or c == 0:
            continue
        for b in pr.space.events():
            pb = pr.prob(b)
            if pb == 0:
                continue
            out = update_measure(rule, pr, b)
            if out.is_empty():
                continue
            q = conditional(pr, b)
            checked += 1
            for eps in epsilons:
                delta = eps * pb / (2 * c)
                for a in pr.space.events():
                    if q.prob(a) < delta and out.sup_prob(a) >= eps:
                        return Fail(Witness(
                            'continuity', rule_name(rule),
                            Fixture(pr.space, FiniteSet(pr.space, [pr]), b,
                                    a=a),
                            out.to_json(),
                            'members below %s' % format_rational(eps), None))
    if not checked:
        return Inconclusive('No fixture with a finite positive constant')
    return Pass(checked)


# -----------------------------------------------------------------------------
# ---------------------------------- supprob ----------------------------------
# -----------------------------------------------------------------------------


@docstrings.dedent
def supprob_eval(rule, space, pr, a, b):
    """
    The supremum of ``Pr'(a) / Pr(a|b)`` over the update of ``{pr}``

    Parameters
    ----------
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    space: credalaudit.measures.MeasureSpace
        The space of `pr`
    pr: credalaudit.measures.Measure
        The measure
    a: credalaudit.measures.Event
        A subevent of `b` with positive probability
    b: credalaudit.measures.Event
        The evidence

    Returns
    -------
    fractions.Fraction or str
        The exact supremum or ``'-inf'`` if the update is empty

    Raises
    ------
    PreconditionViolated
        If `a` is not a subevent of `b` or ``pr(a) == 0``"""
    if pr.space != space:
        raise PreconditionViolated("Measure on %r, expected %r" % (
            pr.space, space))
    if not a.issubset(b):
        raise PreconditionViolated("%r is not a subevent of %r" % (a, b))
    pa = pr.prob(a)
    if pa == 0:
        raise PreconditionViolated("%r has probability 0" % (a, ))
    out = update_measure(get_rule(rule), pr, b)
    if out.is_empty():
        return NEG_INFINITY
    return out.sup_prob(a) * pr.prob(b) / pa


def supprob_xy(rule, x, y):
    """supprob of ``{1}`` given ``{1, 2}`` for ``(x, y - x, 1 - y)`` on M_3
    """
    space = MeasureSpace.standard(3)
    pr = Measure(space, [x, y - x, 1 - y])
    return supprob_eval(rule, space, pr, space.event(['1']),
                        space.event(['1', '2']))


# -----------------------------------------------------------------------------
# ------------------------------- Propositions --------------------------------
# -----------------------------------------------------------------------------


class PropositionCheck(Check):
    """Base class for checks of consequences of the postulates

    The fixtures are singleton fixtures ``({pr}, b)``"""

    _registry = []

    #: Postulates under which the proposition holds
    hypotheses = ()

    def updated(self, rule, fixture):
        pr = _single(fixture)
        return pr, update_measure(rule, pr, fixture.b)


class DominanceDichotomy(PropositionCheck):
    """A member below the conditional implies a member above it"""

    name = 'DominanceDichotomy'

    hypotheses = ('P1', 'P2')

    def check_fixture(self, rule, fixture):
        pr, out = self.updated(rule, fixture)
        if out.is_empty():
            return None
        q = conditional(pr, fixture.b)
        for a in pr.space.events():
            qa = q.prob(a)
            if 0 < qa < 1 and out.inf(a.indicator()) < qa and \
                    not out.sup_prob(a) > qa:
                return self.witness(
                    rule, fixture._replace(a=a), out.to_json(),
                    'a member above %s' % format_rational(qa),
                    _member_with(out, lambda m: m.prob(a) < qa))
        return None


class ExtremePreservation(PropositionCheck):
    """Conditional probabilities 0 and 1 are kept by every member"""

    name = 'ExtremePreservation'

    hypotheses = ('P1', 'P3', 'P4')

    def check_fixture(self, rule, fixture):
        pr, out = self.updated(rule, fixture)
        if out.is_empty():
            return None
        q = conditional(pr, fixture.b)
        for a in pr.space.events():
            if not a.issubset(fixture.b):
                continue
            qa = q.prob(a)
            if qa == 1 and out.inf(a.indicator()) != 1:
                value = 1
            elif qa == 0 and out.sup_prob(a) != 0:
                value = 0
            else:
                continue
            return self.witness(
                rule, fixture._replace(a=a), out.to_json(),
                'every member gives a probability %i' % value,
                _member_with(out, lambda m: m.prob(a) != value))
        return None


class SingletonIsCond(PropositionCheck):
    """A single updated measure is the conditional"""

    name = 'SingletonIsCond'

    hypotheses = ('P1', 'P2')

    def check_fixture(self, rule, fixture):
        pr, out = self.updated(rule, fixture)
        if not isinstance(out, FiniteSet) or len(out) != 1:
            return None
        q = conditional(pr, fixture.b)
        if out.measures[0] != q:
            return self.witness(rule, fixture, out.to_json(),
                                FiniteSet(pr.space, [q]).to_json(),
                                out.measures[0])
        return None


class Averaging(PropositionCheck):
    """Another member agrees on A and conditions the rest of the evidence

    For disjoint ``A`` and ``D`` inside the evidence ``C`` with
    ``Pr(D) > 0`` and every member ``Pr'``, some member ``Pr''`` has
    ``Pr''(A) = Pr'(A)`` and ``Pr''(D) = (1 - Pr'(A)) Pr(D | C - A)``."""

    name = 'Averaging'

    hypotheses = ('P1', 'P2', "P6''")

    def check_fixture(self, rule, fixture):
        pr, out = self.updated(rule, fixture)
        if out.is_empty():
            return None
        c = fixture.b
        if isinstance(out, FiniteSet):
            members = out.measures
        else:
            members = [m for m in out.candidates() if out.contains(m)]
        subevents = [e for e in pr.space.events() if e.issubset(c)]
        for a in subevents:
            for d in subevents:
                if d.mask & a.mask or pr.prob(d) == 0:
                    continue
                ratio = conditional(pr, c - a).prob(d)
                for m in members:
                    pa = m.prob(a)
                    target = (1 - pa) * ratio
                    if isinstance(out, FiniteSet):
                        found = any(o.prob(a) == pa and o.prob(d) == target
                                    for o in out)
                    else:
                        found = not out.restrict_prob(
                            a, 'eq', pa).restrict_prob(
                                d, 'eq', target).is_empty()
                    if not found:
                        return self.witness(
                            rule, fixture._replace(a=a), out.to_json(),
                            {'event': d.to_json(),
                             'probability': format_rational(target)}, m)
        return None


class _VTableCheck(PropositionCheck):
    """Base class for the checks of the function ``V(Pr(A), Pr(B))``"""

    def table(self, rule, fixtures):
        """Yield ``(key, value, fixture)`` for all ``A`` inside ``b``"""
        for fixture in fixtures:
            pr = _single(fixture)
            b = fixture.b
            pb = pr.prob(b)
            for a in pr.space.events():
                pa = pr.prob(a)
                if pa == 0 or not a.issubset(b):
                    continue
                value = supprob_eval(rule, pr.space, pr, a, b)
                yield (pa, pb), value, fixture._replace(a=a)

    def check_fixture(self, rule, fixture):
        verdict = self.run(rule, [fixture])
        return verdict.witness if isinstance(verdict, Fail) else None


class VWellDefined(_VTableCheck):
    """supprob only depends on ``Pr(A)`` and ``Pr(B)``"""

    name = 'VWellDefined'

    hypotheses = ('P1', 'P2', 'P3', 'P4', 'P5', 'P7')

    def run(self, rule, fixtures):
        rule = get_rule(rule)
        seen = {}
        for key, value, fixture in self.table(rule, fixtures):
            if key not in seen:
                seen[key] = (value, fixture)
            elif seen[key][0] != value:
                other = seen[key][1]
                return Fail(self.witness(
                    rule, fixture, format_value(value),
                    {'value': format_value(seen[key][0]),
                     'fixture': fixture_to_json(other)}))
        if not seen:
            return Inconclusive('No fixture with a positive subevent')
        return Pass(len(seen), 0, None, (
            '%i values of V on the pool' % len(seen), ))


class VMonotone(_VTableCheck):
    """``V(x, y)`` does not increase in ``x`` and ``V(y, y) = 1``"""

    name = 'VMonotone'

    hypotheses = ('P1', 'P2', 'P3', 'P4', 'P5', 'P7')

    def run(self, rule, fixtures):
        rule = get_rule(rule)
        values = OrderedDict()
        for key, value, fixture in self.table(rule, fixtures):
            values.setdefault(key, (value, fixture))
        if not values:
            return Inconclusive('No fixture with a positive subevent')
        for (x, y), (value, fixture) in values.items():
            if x == y and value != 1:
                return Fail(self.witness(rule, fixture, format_value(value),
                                         '1/1'))
        by_y = OrderedDict()
        for (x, y) in sorted(values):
            by_y.setdefault(y, []).append(x)
        for y, xs in by_y.items():
            for x0, x1 in zip(xs[:-1], xs[1:]):
                v0, v1 = values[(x0, y)][0], values[(x1, y)][0]
                if _rank(v1) > _rank(v0):
                    return Fail(self.witness(
                        rule, values[(x1, y)][1], format_value(v1),
                        'at most %s' % format_value(v0)))
        return Pass(len(values))


PROPOSITIONS = ('DominanceDichotomy', 'ExtremePreservation', 'VWellDefined',
                'VMonotone', 'Averaging', 'SingletonIsCond')


@docstrings.dedent
def check_proposition(which, rule, fixtures, verdicts=None):
    """
    Check a consequence of the postulates

    Parameters
    ----------
    which: str
        One of :data:`PROPOSITIONS`
    rule: str or credalaudit.rules.UpdateRule
        The update rule
    fixtures: list of Fixture
        Singleton fixtures ``({pr}, b)``
    verdicts: dict
        The postulate verdicts of `rule`. If given, the hypotheses of the
        proposition must have passed

    Returns
    -------
    Pass or Fail or Inconclusive
        The verdict

    Raises
    ------
    HypothesisNotMet
        If `verdicts` is given and a hypothesis did not pass"""
    if which not in PROPOSITIONS:
        raise InputError("Unknown proposition %r, expected one of %s" % (
            which, ', '.join(PROPOSITIONS)))
    check = get_check(which, PropositionCheck._registry)
    rule = get_rule(rule)
    if verdicts is not None:
        missing = [p for p in check.hypotheses
                   if not isinstance(verdicts.get(p), Pass)]
        if missing:
            raise HypothesisNotMet("%s does not satisfy %s" % (
                rule_name(rule), ', '.join(missing)))
    verdict = check.run(rule, fixtures)
    if verdicts is not None and isinstance(verdict, Pass):
        verdict = verdict._replace(notes=tuple(verdict.notes) + (
            'hypotheses %s hold on the pool' % ', '.join(check.hypotheses),
        ))
    return verdict


# -----------------------------------------------------------------------------
# ---------------------------------- Replay -----------------------------------
# -----------------------------------------------------------------------------


def replay_witness(witness):
    """
    Re-run the check of a witness

    Returns
    -------
    bool
        True if the discrepancy is reproduced exactly"""
    rule = get_rule(witness.rule)
    if isinstance(witness.observed, dict) and 'family' in witness.observed:
        depth = witness.fixture.space.size
        constants = list(map(format_value, family_constants(rule, depth)))
        return constants == witness.observed['family']
    check = get_check(witness.postulate, PostulateCheck._registry)
    if witness.postulate in ("P6''", 'P6*'):
        fixture = witness.fixture._replace(a=None)
    else:
        fixture = witness.fixture
    replayed = check.check_fixture(rule, fixture)
    return replayed is not None and replayed.observed == witness.observed
