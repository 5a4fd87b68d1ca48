"""Belief functions and their credal sets

This module connects Dempster-Shafer belief functions with the credal sets of
:mod:`credalaudit.measures`: the set of measures dominating a belief
function, exact lower envelopes (conditional ones included), Dempster's rule
of conditioning and the check that maximum likelihood updating acts like
Dempster's rule on sets that satisfy the conditions of Gilboa and
Schmeidler."""
import logging
from collections import namedtuple, OrderedDict
from fractions import Fraction
from functools import lru_cache
from credalaudit.utils import (
    docstrings, append_doc, to_rational, format_rational,
    AllEvidenceNull, NullPlausibility, HypothesisNotMet, InputError,
    DimensionTooLarge, PreconditionViolated, UnsupportedRepresentation)
from credalaudit.lp import (
    LinearConstraint, MAX_VERTEX_DIMENSION, Optimal, lfp_solve)
from credalaudit.measures import (
    MeasureSpace, Measure, Event, FiniteSet, Polytope, conditional,
    event_from_json, loads, polytope_vertices)
from credalaudit.rules import apply_rule
from credalaudit.postulates import Fixture, Witness, Pass, Fail


logger = logging.getLogger(__name__)


class MassFunction(namedtuple('MassFunction', ['space', 'masses'])):
    """A basic probability assignment on the events of a space

    Parameters
    ----------
    space: credalaudit.measures.MeasureSpace
        The space
    masses: list of tuple
        Pairs ``(event, mass)``. Masses of equal events are added, focal
        events are stored in ascending bitmask order"""

    __slots__ = ()

    def __new__(cls, space, masses):
        total = OrderedDict()
        for event, mass in masses:
            if event.space != space:
                raise InputError("Focal event %r is not on %r" % (
                    event, space))
            mass = to_rational(mass)
            if mass < 0:
                raise InputError("Negative mass %s of %r" % (
                    format_rational(mass), event))
            if event.is_empty() and mass:
                raise InputError("The empty event must not carry mass")
            total[event.mask] = total.get(event.mask, 0) + mass
        if sum(total.values()) != 1:
            raise InputError("Masses sum up to %s, not 1" % (
                format_rational(sum(total.values())), ))
        focal = tuple((Event(space, mask), m)
                      for mask, m in sorted(total.items()) if m)
        return super(MassFunction, cls).__new__(cls, space, focal)

    @classmethod
    def vacuous(cls, space):
        """The mass function with ``m(W) = 1``"""
        return cls(space, [(space.full, 1)])

    @classmethod
    def bayesian(cls, pr):
        """The mass function of a single measure"""
        return cls(pr.space, [(pr.space.singleton(i), w)
                              for i, w in enumerate(pr.weights) if w])

    @classmethod
    def from_labels(cls, space, masses):
        """Create a mass function from ``{labels: mass}``"""
        return cls(space, [(space.event(labels), m)
                           for labels, m in masses.items()])

    def view(self):
        return BeliefView(self)

    def to_json(self):
        return [OrderedDict([('event', e.to_json()),
                             ('mass', format_rational(m))])
                for e, m in self.masses]

    def __repr__(self):
        return 'MassFunction[%s]' % ', '.join(
            '%s: %s' % ('{%s}' % ','.join(e.labels), format_rational(m))
            for e, m in self.masses)


def mass_from_json(space, obj):
    """Decode ``[{"event": [labels], "mass": "p/q"}, ...]``"""
    if isinstance(obj, str):
        obj = loads(obj, 'mass function')
    if not isinstance(obj, list):
        raise InputError("A mass function must be a list, not %r" % (obj, ))
    try:
        return MassFunction(space, [
            (event_from_json(space, entry['event']), entry['mass'])
            for entry in obj])
    except (KeyError, TypeError) as e:
        raise InputError("Invalid focal element: %s" % (e, ))


class Capacity(object):
    """A set function given by its values on all events

    Parameters
    ----------
    space: credalaudit.measures.MeasureSpace
        The space
    values: list of fractions.Fraction
        The values in the bitmask order of the events"""

    def __init__(self, space, values):
        self.space = space
        self.values = tuple(map(Fraction, values))
        if len(self.values) != 1 << space.size:
            raise InputError("Expected %i values, got %i" % (
                1 << space.size, len(self.values)))

    def bel(self, a):
        """The value of the capacity at `a`"""
        return self.values[a.mask]

    def pl(self, a):
        """The dual ``1 - bel(complement of a)``"""
        return 1 - self.bel(a.complement())

    def is_two_monotone(self):
        return not self.two_monotonicity_violations()

    def two_monotonicity_violations(self):
        """The pairs ``(A, B)`` with ``f(A|B) + f(A&B) < f(A) + f(B)``"""
        events = self.space.events()
        return [(a, b) for i, a in enumerate(events) for b in events[i + 1:]
                if self.bel(a | b) + self.bel(a & b) < self.bel(a) +
                self.bel(b)]

    def __eq__(self, other):
        return (isinstance(other, Capacity) and self.space == other.space and
                self.values == other.values)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.space, self.values))

    def to_json(self):
        return OrderedDict((','.join(e.labels), format_rational(self.bel(e)))
                           for e in self.space.events())


class BeliefView(Capacity):
    """Belief and plausibility of a :class:`MassFunction`"""

    def __init__(self, mass):
        self.mass = mass
        super(BeliefView, self).__init__(mass.space, [
            sum((m for e, m in mass.masses if e.issubset(a)), Fraction(0))
            for a in mass.space.events()])


def _view(bel):
    return bel.view() if isinstance(bel, MassFunction) else bel


def dominated_set(bel):
    """
    The measures dominating a belief function

    Parameters
    ----------
    bel: BeliefView or Capacity or MassFunction
        The belief function

    Returns
    -------
    credalaudit.measures.Polytope
        ``{Pr : Pr(A) >= Bel(A) for every event A}``"""
    bel = _view(bel)
    space = bel.space
    return Polytope(space, [
        LinearConstraint.ge(a.indicator(), bel.bel(a))
        for a in space.events()[1:-1]])


def _closed_polytope(x):
    """`x` as a closed polytope or None"""
    if isinstance(x, Polytope):
        return x if x.is_closed else None
    if isinstance(x, FiniteSet) and len(x) == 1:
        pr = x.measures[0]
        n = x.space.size
        return Polytope(x.space, [
            LinearConstraint([int(i == j) for j in range(n)], 'eq', w)
            for i, w in enumerate(pr.weights)])
    return None


@docstrings.dedent
def lower_envelope(x, a, given=None):
    """
    The exact infimum of ``Pr(a)`` or ``Pr(a | given)`` over `x`

    Parameters
    ----------
    x: credalaudit.measures.CredalSet
        A finite set or a polytope (strict constraints are relaxed)
    a: credalaudit.measures.Event
        The event
    given: credalaudit.measures.Event
        The conditioning event. Members with ``Pr(given) = 0`` are excluded

    Returns
    -------
    fractions.Fraction
        The infimum

    Raises
    ------
    AllEvidenceNull
        If every member of `x` gives `given` the probability 0
    PreconditionViolated
        If `x` is empty"""
    if x.is_empty():
        raise PreconditionViolated("Lower envelope of an empty set")
    if given is None:
        return x.inf(a.indicator())
    if not x.sup_prob(given):
        raise AllEvidenceNull(
            "Every member gives %r the probability 0" % (given, ))
    if isinstance(x, FiniteSet):
        return min(conditional(pr, given).prob(a) for pr in x
                   if pr.prob(given) > 0)
    if not isinstance(x, Polytope):
        raise UnsupportedRepresentation(
            "Conditional lower envelopes of %s sets" % type(x).__name__)
    outcome = lfp_solve(x.all_constraints(), x.space.size,
                        (a & given).indicator(), given.indicator(), 'min')
    assert isinstance(outcome, Optimal), outcome
    return outcome.value


@lru_cache(maxsize=1024)
def envelope_capacity(x, given=None):
    """The lower envelope of `x` (given an event) on all events"""
    return Capacity(x.space, [lower_envelope(x, a, given)
                              for a in x.space.events()])


@docstrings.dedent
def dempster_conditional(bel, a, b):
    """
    Dempster's rule of conditioning

    Parameters
    ----------
    bel: BeliefView or Capacity or MassFunction
        The belief function
    a: credalaudit.measures.Event
        The event
    b: credalaudit.measures.Event
        The evidence

    Returns
    -------
    fractions.Fraction
        ``Bel(a | b) = (Bel(a | ~b) - Bel(~b)) / (1 - Bel(~b))``
    fractions.Fraction
        ``Pl(a | b) = Pl(a & b) / Pl(b)``

    Raises
    ------
    NullPlausibility
        If ``Pl(b) = 0``"""
    bel = _view(bel)
    pl_b = bel.pl(b)
    if pl_b == 0:
        raise NullPlausibility("Pl(%s) = 0" % (','.join(b.labels), ))
    nb = b.complement()
    lower = (bel.bel(a | nb) - bel.bel(nb)) / (1 - bel.bel(nb))
    upper = bel.pl(a & b) / pl_b
    assert lower <= upper, (lower, upper)
    return lower, upper


def closed_form_conditional(bel, a, b):
    """
    The closed form of the lower envelope conditional

    ``Bel(a & b) / (Bel(a & b) + Pl(b - a))`` and dually for the upper
    value. Only used to cross-check :func:`lower_envelope`.

    Raises
    ------
    PreconditionViolated
        If ``Bel(b) = 0``"""
    bel = _view(bel)
    if bel.bel(b) == 0:
        raise PreconditionViolated("Bel(%s) = 0" % (','.join(b.labels), ))
    ab, rest = a & b, b - a
    lower = bel.bel(ab) / (bel.bel(ab) + bel.pl(rest))
    upper = bel.pl(ab) / (bel.pl(ab) + bel.bel(rest))
    return lower, upper


GsResult = namedtuple('GsResult', ['ok', 'diagnostics', 'capacity'])

GsResult = append_doc(GsResult, docstrings.get_sections("""
Parameters
----------
ok: bool
    Whether the set satisfies the conditions
diagnostics: list of str
    One message per violated condition
capacity: Capacity
    The lower envelope ``f_X`` of the set, None if it is not a closed
    polytope
""", 'GsResult'))


def gs_check(x):
    """
    Check the conditions of Gilboa and Schmeidler

    The set must be a closed convex polytope, it must equal the set of
    measures dominating its lower envelope ``f_X`` and ``f_X`` must be
    2-monotone.

    Returns
    -------
    GsResult
        The outcome with diagnostics

    Raises
    ------
    DimensionTooLarge
        If the space has more atoms than the vertex enumeration supports"""
    if x.space.size > MAX_VERTEX_DIMENSION:
        raise DimensionTooLarge("%i atoms" % x.space.size)
    poly = _closed_polytope(x)
    if poly is None:
        return GsResult(False, ['not a closed convex polytope as represented'],
                        None)
    if poly.is_empty():
        return GsResult(False, ['empty set'], None)
    f = envelope_capacity(poly)
    diagnostics = []
    core = dominated_set(f)
    outside = [v for v in polytope_vertices(core) if not poly.contains(v)]
    if outside:
        diagnostics.append(
            'the set is smaller than the measures dominating its lower '
            'envelope, e.g. %r' % (outside[0], ))
    violations = f.two_monotonicity_violations()
    if violations:
        a, b = violations[0]
        diagnostics.append('f_X is not 2-monotone on {%s} and {%s}' % (
            ','.join(a.labels), ','.join(b.labels)))
    return GsResult(not diagnostics, diagnostics, f)


@docstrings.dedent
def ml_dempster_check(x, b):
    """
    Compare maximum likelihood updating with Dempster's rule

    Parameters
    ----------
    x: credalaudit.measures.CredalSet
        A set that passes :func:`gs_check`
    b: credalaudit.measures.Event
        The evidence

    Returns
    -------
    credalaudit.postulates.Pass or credalaudit.postulates.Fail
        A :class:`~credalaudit.postulates.Fail` carries the first event whose
        lower envelope after the update differs from Dempster's value

    Raises
    ------
    HypothesisNotMet
        If `x` does not pass :func:`gs_check`
    NullPlausibility
        If ``Pl(b) = 0`` for the lower envelope of `x`"""
    result = gs_check(x)
    if not result.ok:
        raise HypothesisNotMet('; '.join(result.diagnostics))
    f = result.capacity
    poly = _closed_polytope(x)
    if f.pl(b) == 0:
        raise NullPlausibility("Pl(%s) = 0" % (','.join(b.labels), ))
    out = apply_rule('ml', poly, b).result
    checked = 0
    for a in x.space.events():
        envelope = out.inf(a.indicator())
        expected = dempster_conditional(f, a, b)[0]
        checked += 1
        if envelope != expected:
            logger.debug('ML and Dempster differ on %r: %s != %s', a,
                         envelope, expected)
            return Fail(Witness(
                'ml-dempster', 'ml', Fixture(x.space, poly, b, a=a),
                format_rational(envelope), format_rational(expected), None))
    return Pass(checked)


# -----------------------------------------------------------------------------
# ------------------------- Iterated envelope updates -------------------------
# -----------------------------------------------------------------------------


def envelope_update(x, b):
    """The measures dominating the conditional lower envelope of `x`"""
    return dominated_set(envelope_capacity(x, b))


def iterated_envelope(x, b, c, a):
    """
    The lower envelope of `a` after updating with `b`, then with `c`

    Returns
    -------
    fractions.Fraction
        The iterated value
    fractions.Fraction
        The value of the single update with ``b & c``"""
    return (lower_envelope(envelope_update(x, b), a, c),
            lower_envelope(x, a, b & c))


def _search_events(space):
    """Proper nonempty events, larger ones first"""
    return sorted(space.events()[1:-1], key=lambda e: (-len(e), e.mask))


def envelope_p3_search(masses):
    """
    Search for a violation of the commutation of lower envelope updates

    Parameters
    ----------
    masses: list of MassFunction
        The mass functions whose dominated sets are searched

    Returns
    -------
    credalaudit.postulates.Pass or credalaudit.postulates.Fail
        The first fixture where updating twice differs from updating with
        the intersection"""
    checked = 0
    for mass in masses:
        bel = mass.view()
        x = dominated_set(bel)
        events = _search_events(mass.space)
        for b in events:
            for c in events:
                bc = b & c
                if bc.is_empty() or bel.bel(bc) == 0:
                    continue
                for a in events:
                    if not a.issubset(bc):
                        continue
                    iterated, direct = iterated_envelope(x, b, c, a)
                    checked += 1
                    if iterated != direct:
                        logger.debug('Envelope updates do not commute for %r',
                                     mass)
                        return Fail(Witness(
                            'P3', 'envelope',
                            Fixture(mass.space, x, b, c, a=a),
                            format_rational(iterated),
                            format_rational(direct), None))
    return Pass(checked)


@lru_cache(maxsize=None)
def mass_catalog():
    """
    Mass functions on at most four atoms

    The first entry has iterated lower envelope updates that do not
    commute: ``B = {1,2,3}``, ``C = {2,3,4}`` and ``A = {2}`` give ``2/5``
    when updated successively and ``1/2`` in one step."""
    m = MeasureSpace.standard
    ret = [
        MassFunction.from_labels(m(4), {('2', ): '1/3', ('3', ): '1/3',
                                        ('1', '4'): '1/3'}),
        MassFunction.from_labels(m(3), {('1', '2'): '1/2', ('3', ): '1/2'}),
        MassFunction.from_labels(m(3), {('1', ): '1/2', ('1', '2'): '1/4',
                                        ('1', '2', '3'): '1/4'}),
        MassFunction.from_labels(m(4), {('1', ): '1/4', ('1', '2'): '1/4',
                                        ('1', '2', '3'): '1/4',
                                        ('1', '2', '3', '4'): '1/4'}),
        MassFunction.from_labels(m(3), {('1', '2'): '2/3',
                                        ('1', '2', '3'): '1/3'}),
        MassFunction.from_labels(m(4), {('1', ): '1/2',
                                        ('1', '2', '3', '4'): '1/2'}),
        MassFunction.from_labels(m(4), {('1', '2'): '1/2', ('3', '4'): '1/2'}),
        MassFunction.from_labels(m(4), {('1', '2'): '1/3', ('2', '3'): '1/3',
                                        ('3', '4'): '1/3'}),
        MassFunction.from_labels(m(3), {('1', ): '1/5', ('2', ): '1/5',
                                        ('1', '3'): '2/5',
                                        ('2', '3'): '1/5'}),
        ]
    ret.extend(MassFunction.vacuous(m(n)) for n in range(1, 5))
    ret.extend(MassFunction.bayesian(Measure.uniform(m(n)))
               for n in range(2, 5))
    ret.append(MassFunction.bayesian(Measure(m(3), ['1/2', '1/3', '1/6'])))
    for n in (2, 3):
        space = m(n)
        ret.extend(MassFunction(space, [(a, '1/2'), (space.full, '1/2')])
                   for a in space.events()[1:-1])
    return tuple(ret)


def catalog_queries(mass):
    """Pairs ``(a, b)`` of the conditional cross-checks of a mass function"""
    bel = mass.view()
    events = mass.space.events()[1:]
    return [(a, b) for b in events if bel.bel(b) > 0 for a in events]
