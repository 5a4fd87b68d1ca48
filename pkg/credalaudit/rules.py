"""Update rules for credal sets

This module defines the seven update rules, the framework of classical
update rules (select a subset, then condition) and the application contract
shared by all of them: the base condition is applied before the body of every
rule, so every rule returns the empty set if all members of the input give
the evidence probability 0."""
import abc
import logging
from collections import namedtuple
from credalaudit.utils import (
    docstrings, append_doc, RegistryMeta, unique_everseen,
    UnsupportedRepresentation, SpaceMismatch, PreconditionViolated,
    InputError)
from credalaudit.measures import (
    FiniteSet, Polytope, Derived, Event, conditional, condition_set,
    credal_closure, empty_set, union_sets)
from credalaudit.lp import LinearConstraint


logger = logging.getLogger(__name__)


#: Note that the base condition emptied the output
BASE_CONDITION = 'BaseConditionApplied'

#: Note that the maximum likelihood is not attained in an open polytope
SUP_NOT_ATTAINED = 'SupNotAttained'


UpdateOutcome = namedtuple('UpdateOutcome', ['result', 'notes'])

UpdateOutcome = append_doc(UpdateOutcome, docstrings.get_sections("""
The outcome of applying an update rule

Parameters
----------
result: credalaudit.measures.CredalSet
    The updated set
notes: tuple of str
    Flags raised during the update, a subset of ``('BaseConditionApplied',
    'SupNotAttained')``
""", 'UpdateOutcome'))


class UpdateRule(metaclass=RegistryMeta):
    """Abstract base class for an update rule

    Subclasses implement :meth:`_apply` for inputs that passed the base
    condition and, if the rule applies to infinite inputs, :meth:`_lift` for
    the pointwise union over the members of such an input."""

    _registry = []

    #: The name of the rule on the command line and in reports
    name = None

    #: A one line description
    summary = None

    _logger = None

    @property
    def logger(self):
        """The logger of this rule"""
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

    def __repr__(self):
        return '<%s %s>' % (self.__class__.__name__, self.name)

    def __eq__(self, other):
        return isinstance(other, UpdateRule) and self.name == other.name

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.name)

    def __reduce__(self):
        return get_rule, (self.name, )

    @staticmethod
    def _check(x, b):
        if x.space != b.space:
            raise SpaceMismatch("Updating a set on %r with %r" % (
                x.space, b))

    @docstrings.get_sections(base='UpdateRule.apply')
    @docstrings.dedent
    def apply(self, x, b):
        """
        Update the credal set `x` with the evidence `b`

        Parameters
        ----------
        x: credalaudit.measures.CredalSet
            The set to update
        b: credalaudit.measures.Event
            The evidence on the space of `x`

        Returns
        -------
        UpdateOutcome
            The updated set with the notes of the update"""
        self._check(x, b)
        evidence = x.sup_prob(b)
        if not evidence:
            self.logger.debug('Base condition applied for %r and %r', x, b)
            return UpdateOutcome(empty_set(x.space), (BASE_CONDITION, ))
        ret = self._apply(x, b)
        if isinstance(ret, UpdateOutcome):
            return ret
        return UpdateOutcome(ret, ())

    @abc.abstractmethod
    def _apply(self, x, b):
        """Apply the rule to an input with positive evidence probability"""

    @docstrings.dedent
    def lift_pointwise(self, x, b):
        """
        The union of the updates of the singletons of `x`

        Parameters
        ----------
        %(UpdateRule.apply.parameters)s

        Returns
        -------
        credalaudit.measures.CredalSet
            The union of ``Upd({Pr}, b)`` over all ``Pr`` in `x`"""
        self._check(x, b)
        if isinstance(x, FiniteSet):
            return union_sets(x.space, [
                self.apply(FiniteSet(x.space, [pr]), b).result for pr in x])
        if not x.sup_prob(b):
            return empty_set(x.space)
        return self._lift(x, b)

    def _lift(self, x, b):
        raise UnsupportedRepresentation(
            "The pointwise union of %s is not implemented for %r" % (
                self.name, type(x).__name__))


class Cond(UpdateRule):
    """Conditioning of every member with positive evidence probability"""

    name = 'cond'

    summary = 'Condition every member with positive evidence probability'

    def _apply(self, x, b):
        return condition_set(x, b)

    _lift = _apply


class Constrain(UpdateRule):
    """Keep exactly the members that assign the evidence probability 1"""

    name = 'constrain'

    summary = 'Keep the members that give the evidence probability 1'

    def _apply(self, x, b):
        if isinstance(x, Polytope):
            return x.with_constraint(LinearConstraint(b.indicator(), 'eq', 1))
        return x.restrict_prob(b, 'eq', 1)

    _lift = _apply


class Forget(UpdateRule):
    """Ignore the input and return all measures certain of the evidence"""

    name = 'forget'

    summary = 'All measures giving the evidence probability 1'

    def _apply(self, x, b):
        return Polytope.certain(b)

    _lift = _apply


class Trivial(UpdateRule):
    """Discard the input and every evidence: the update is always empty"""

    name = 'trivial'

    summary = 'Always the empty set'

    def _apply(self, x, b):
        return empty_set(x.space)

    _lift = _apply


class Closure(UpdateRule):
    """Conditioning of the topological closure of the input"""

    name = 'closure'

    summary = 'Condition the topological closure'

    def _apply(self, x, b):
        return condition_set(credal_closure(x), b)

    def _lift(self, x, b):
        return condition_set(x, b)


class Subset(UpdateRule):
    """Conditioning on every event that could be learned

    A member ``Pr`` with ``Pr(b) = 1`` is kept as it is, all other members
    are replaced by their conditionals on ``C & b`` for every event ``C``
    with ``Pr(C & b) > 0``."""

    name = 'subset'

    summary = 'Condition on every subevent of the evidence'

    @staticmethod
    def subevents(b):
        """The nonempty subevents of `b` in ascending bitmask order"""
        ret = []
        sub = b.mask
        while sub:
            ret.append(Event(b.space, sub))
            sub = (sub - 1) & b.mask
        return ret[::-1]

    def update_member(self, pr, b):
        if pr.prob(b) == 1:
            return [pr]
        return [conditional(pr, c) for c in self.subevents(b)
                if pr.prob(c) > 0]

    def _apply(self, x, b):
        if not isinstance(x, FiniteSet):
            raise UnsupportedRepresentation(
                "The subset rule is only defined for finite sets, not %s" % (
                    type(x).__name__, ))
        return FiniteSet(x.space, unique_everseen(
            pr for member in x for pr in self.update_member(member, b)))


class ML(UpdateRule):
    """Maximum likelihood updating

    Only the members with maximal evidence probability are conditioned. If
    the supremum is not attained in an open polytope, the result is empty
    and flagged with ``'SupNotAttained'``."""

    name = 'ml'

    summary = 'Condition the members of maximal likelihood'

    def _apply(self, x, b):
        face = maximum_likelihood_face(x, b)
        if face.is_empty():
            self.logger.debug('Supremum of %r not attained in %r', b, x)
            return UpdateOutcome(empty_set(x.space), (SUP_NOT_ATTAINED, ))
        return condition_set(face, b)

    def _lift(self, x, b):
        return condition_set(x, b)


def maximum_likelihood_face(x, b):
    """The members of `x` that give `b` the maximal probability"""
    s = x.sup_prob(b)
    if isinstance(x, FiniteSet):
        return FiniteSet(x.space, [pr for pr in x if pr.prob(b) == s])
    return x.restrict_prob(b, 'eq', s)


# -----------------------------------------------------------------------------
# ----------------------------- Classical rules -------------------------------
# -----------------------------------------------------------------------------


#: Registered selectors of classical update rules
selectors = {}


def register_selector(name):
    """Register a function ``(x, b) -> subset of x`` as selector `name`"""
    def decorator(func):
        selectors[name] = func
        return func
    return decorator


@register_selector('all')
def _select_all(x, b):
    return x


@register_selector('certain')
def _select_certain(x, b):
    return x.restrict_prob(b, 'eq', 1)


@register_selector('ml')
def _select_ml(x, b):
    return maximum_likelihood_face(x, b)


class Classical(UpdateRule):
    """A classical update rule: select a subset, then condition it

    Parameters
    ----------
    selector: str
        The name of a function in :data:`selectors`"""

    name = 'classical'

    summary = 'Condition the members picked by a selector'

    def __init__(self, selector='all'):
        if selector not in selectors:
            raise InputError("Unknown selector %r, expected one of %s" % (
                selector, ', '.join(sorted(selectors))))
        self.selector = selector

    @property
    def full_name(self):
        return 'classical:' + self.selector

    def __repr__(self):
        return '<Classical %s>' % self.selector

    def __eq__(self, other):
        return (isinstance(other, Classical) and
                self.selector == other.selector)

    def __hash__(self):
        return hash(self.full_name)

    def __reduce__(self):
        return get_rule, (self.full_name, )

    def _apply(self, x, b):
        selected = selectors[self.selector](x, b)
        if isinstance(x, FiniteSet):
            if not isinstance(selected, FiniteSet) or not all(
                    x.contains(pr) for pr in selected):
                raise PreconditionViolated(
                    "Selector %s picked measures outside of the input" % (
                        self.selector, ))
        return condition_set(selected, b)

    def _lift(self, x, b):
        return condition_set(x, b)


#: Names of the seven update rules in canonical order
RULE_NAMES = ('cond', 'constrain', 'forget', 'trivial', 'closure', 'subset',
              'ml')


def rule_name(rule):
    """The name of `rule` as used in reports"""
    return getattr(rule, 'full_name', rule.name)


def get_rule(name):
    """
    Get an update rule by its name

    Parameters
    ----------
    name: str or UpdateRule
        One of :data:`RULE_NAMES` or ``'classical:<selector>'``

    Returns
    -------
    UpdateRule
        The rule instance"""
    if isinstance(name, UpdateRule):
        return name
    if name.startswith('classical:'):
        return Classical(name.split(':', 1)[1])
    for cls in UpdateRule._registry:
        if cls.name == name and cls is not Classical:
            return cls()
    raise InputError("Unknown update rule %r, expected one of %s" % (
        name, ', '.join(RULE_NAMES + ('classical:<selector>', ))))


def apply_rule(rule, x, b):
    """Apply the update `rule` (instance or name) to `x` and `b`"""
    return get_rule(rule).apply(x, b)


@docstrings.dedent
def iterate_updates(rule, x, evidence):
    """
    Apply a rule successively for a sequence of evidence

    Parameters
    ----------
    rule: str or UpdateRule
        The update rule
    x: credalaudit.measures.CredalSet
        The initial set
    evidence: list of credalaudit.measures.Event
        The evidence, applied from left to right

    Returns
    -------
    UpdateOutcome
        The final set and the accumulated notes"""
    rule = get_rule(rule)
    notes = []
    for b in evidence:
        x, new_notes = rule.apply(x, b)
        notes.extend(new_notes)
    return UpdateOutcome(x, tuple(unique_everseen(notes)))
