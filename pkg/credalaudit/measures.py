"""Finite measure spaces, probability measures and credal sets

This module contains the exact arithmetic foundation of the package: finite
measure spaces with the full power set as algebra, events, probability
measures with :class:`fractions.Fraction` weights, representation shifts and
credal sets in three representations (:class:`FiniteSet`, :class:`Polytope`
and :class:`Derived`).

Every object of this module is immutable after construction."""
import abc
import json
import logging
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from itertools import product, chain
from credalaudit.utils import (
    docstrings, append_doc, unique_everseen, to_rational, format_rational,
    ZeroEvidence, SpaceMismatch, UnsupportedRepresentation, InvalidMeasure,
    InputError, DimensionTooLarge)
from credalaudit.lp import (
    LinearConstraint, LpProblem, Optimal, lp_solve, strict_feasible,
    lfp_solve, vertices, simplex_constraint, MAX_VERTEX_DIMENSION)


logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# ------------------------- Spaces, events, measures --------------------------
# -----------------------------------------------------------------------------


class MeasureSpace(namedtuple('MeasureSpace', ['atoms'])):
    """A finite measure space whose algebra is the full power set

    Parameters
    ----------
    atoms: tuple of str
        The distinct labels of the worlds. Their order is the canonical
        coordinate order of all measures on this space"""
    __slots__ = ()

    def __new__(cls, atoms):
        atoms = tuple(str(a) for a in atoms)
        if not atoms:
            raise InputError("A measure space needs at least one atom")
        if any(not a for a in atoms):
            raise InputError("Atom labels must not be empty")
        if len(set(atoms)) != len(atoms):
            raise InputError("Atom labels must be distinct, got %s" % (
                list(atoms), ))
        return super(MeasureSpace, cls).__new__(cls, atoms)

    @classmethod
    def standard(cls, n):
        """The space M_n with the atoms ``'1', ..., 'n'``"""
        return cls([str(i) for i in range(1, n + 1)])

    @property
    def size(self):
        return len(self.atoms)

    def index(self, label):
        try:
            return self.atoms.index(str(label))
        except ValueError:
            raise InputError("Unknown atom %r, expected one of %s" % (
                label, list(self.atoms)))

    def event(self, labels):
        """The event made of the atoms with the given `labels`"""
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    @property
    def full(self):
        return Event(self, (1 << self.size) - 1)

    @property
    def empty(self):
        return Event(self, 0)

    def events(self):
        """All events of the space, ordered by their bitmask"""
        return [Event(self, mask) for mask in range(1 << self.size)]

    def singleton(self, i):
        return Event(self, 1 << i)

    def to_json(self):
        return list(self.atoms)

    def __repr__(self):
        return 'MeasureSpace(%s)' % (', '.join(self.atoms), )


class Event(namedtuple('Event', ['space', 'mask'])):
    """A subset of the atoms of a :class:`MeasureSpace` stored as a bitmask
    """
    __slots__ = ()

    def _check(self, other):
        if self.space != other.space:
            raise SpaceMismatch("Events live on %r and %r" % (
                self.space, other.space))

    @property
    def members(self):
        return tuple(i for i in range(self.space.size) if self.mask >> i & 1)

    @property
    def labels(self):
        return [self.space.atoms[i] for i in self.members]

    def __contains__(self, i):
        return bool(self.mask >> i & 1)

    def __and__(self, other):
        self._check(other)
        return Event(self.space, self.mask & other.mask)

    def __or__(self, other):
        self._check(other)
        return Event(self.space, self.mask | other.mask)

    def __sub__(self, other):
        self._check(other)
        return Event(self.space, self.mask & ~other.mask)

    def complement(self):
        return Event(self.space, self.space.full.mask & ~self.mask)

    def issubset(self, other):
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_empty(self):
        return self.mask == 0

    def __len__(self):
        return bin(self.mask).count('1')

    def indicator(self):
        """The coefficient vector of ``Pr(self)``"""
        return tuple(Fraction(int(i in self)) for i in range(self.space.size))

    def to_json(self):
        return self.labels

    def __repr__(self):
        return '{%s}' % (','.join(self.labels), )


class Measure(namedtuple('Measure', ['space', 'weights'])):
    """A probability measure on a finite :class:`MeasureSpace`

    Parameters
    ----------
    space: MeasureSpace
        The underlying space
    weights: tuple of fractions.Fraction
        One nonnegative weight per atom, summing up to exactly 1"""
    __slots__ = ()

    def __new__(cls, space, weights):
        weights = tuple(map(Fraction, weights))
        if len(weights) != space.size:
            raise InvalidMeasure("Expected %i weights, got %i" % (
                space.size, len(weights)))
        if any(w < 0 for w in weights):
            raise InvalidMeasure("Negative weight in %s" % (
                ', '.join(map(format_rational, weights)), ))
        if sum(weights) != 1:
            raise InvalidMeasure("Weights sum up to %s, not 1" % (
                format_rational(sum(weights)), ))
        return super(Measure, cls).__new__(cls, space, weights)

    @classmethod
    def point_mass(cls, space, i):
        return cls(space, [int(i == j) for j in range(space.size)])

    @classmethod
    def uniform(cls, space):
        return cls(space, [Fraction(1, space.size)] * space.size)

    def prob(self, event):
        """The probability of `event`"""
        if event.space != self.space:
            raise SpaceMismatch("Event on %r for a measure on %r" % (
                event.space, self.space))
        return sum((self.weights[i] for i in event.members), Fraction(0))

    def dot(self, coefficients):
        return sum(c * w for c, w in zip(coefficients, self.weights))

    def support(self):
        return Event(self.space, sum(
            1 << i for i, w in enumerate(self.weights) if w))

    def to_json(self):
        return {a: format_rational(w)
                for a, w in zip(self.space.atoms, self.weights)}

    def __repr__(self):
        return '(%s)' % (', '.join(map(str, self.weights)), )


def _check_space(pr, space):
    if pr.space != space:
        raise SpaceMismatch("Measure on %r, expected %r" % (pr.space, space))


@lru_cache(maxsize=None)
@docstrings.dedent
def conditional(pr, b):
    """
    Condition a measure on an event

    Parameters
    ----------
    pr: Measure
        The prior
    b: Event
        The evidence

    Returns
    -------
    Measure
        ``pr(. | b)``

    Raises
    ------
    ZeroEvidence
        If ``pr(b) == 0``"""
    pb = pr.prob(b)
    if pb == 0:
        raise ZeroEvidence("Cannot condition %r on %r of probability 0" % (
            pr, b))
    return Measure(pr.space, [w / pb if i in b else Fraction(0)
                              for i, w in enumerate(pr.weights)])


def grid_measures(space, denominator):
    """
    All measures whose weights are multiples of ``1/denominator``

    The measures are ordered lexicographically by their weights, i.e. for
    two atoms and denominator 2 ``(0, 1), (1/2, 1/2), (1, 0)``"""
    if denominator < 1:
        raise ValueError("Denominator must be positive, not %r" % (
            denominator, ))

    def compositions(total, parts):
        if parts == 1:
            yield (total, )
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first, ) + rest

    return [Measure(space, [Fraction(k, denominator) for k in comp])
            for comp in compositions(denominator, space.size)]


# -----------------------------------------------------------------------------
# --------------------------- Representation shifts ---------------------------
# -----------------------------------------------------------------------------


class RepShift(namedtuple('RepShift', ['source', 'target', 'mapping'])):
    """A surjection between the atoms of two finite spaces

    Parameters
    ----------
    source: MeasureSpace
        The domain
    target: MeasureSpace
        The codomain
    mapping: tuple of int
        The index of the target atom for every source atom"""
    __slots__ = ()

    def __new__(cls, source, target, mapping):
        mapping = tuple(mapping)
        if len(mapping) != source.size:
            raise InputError("A shift needs one image per source atom")
        if any(not 0 <= j < target.size for j in mapping):
            raise InputError("Shift image out of range: %s" % (mapping, ))
        if set(mapping) != set(range(target.size)):
            raise InputError("Shift %s is not surjective onto %r" % (
                mapping, target))
        return super(RepShift, cls).__new__(cls, source, target, mapping)

    @classmethod
    def identity(cls, space):
        return cls(space, space, range(space.size))

    @classmethod
    def from_labels(cls, source, target, mapping):
        """Create the shift from a mapping of source to target labels"""
        return cls(source, target, [target.index(mapping[a])
                                    for a in source.atoms])

    def matrix(self):
        """The 0/1 matrix of the pushforward (target x source)"""
        return [[Fraction(int(self.mapping[i] == j))
                 for i in range(self.source.size)]
                for j in range(self.target.size)]

    def to_json(self):
        return {'source': self.source.to_json(),
                'target': self.target.to_json(),
                'map': {a: self.target.atoms[j]
                        for a, j in zip(self.source.atoms, self.mapping)}}

    def __repr__(self):
        return 'RepShift(%s)' % (', '.join(
            '%s->%s' % (a, self.target.atoms[j])
            for a, j in zip(self.source.atoms, self.mapping)), )


def pushforward(f, pr):
    """The image measure ``f*(pr)`` on the target space of `f`"""
    _check_space(pr, f.source)
    weights = [Fraction(0)] * f.target.size
    for i, w in enumerate(pr.weights):
        weights[f.mapping[i]] += w
    return Measure(f.target, weights)


def preimage(f, b):
    """The event ``f^{-1}(b)`` on the source space of `f`"""
    if b.space != f.target:
        raise SpaceMismatch("Event on %r, shift targets %r" % (
            b.space, f.target))
    return Event(f.source, sum(
        1 << i for i, j in enumerate(f.mapping) if j in b))


def enumerate_surjections(src, dst):
    """All surjections from `src` onto `dst` in lexicographic order"""
    if src.size < dst.size:
        return []
    return [RepShift(src, dst, mapping)
            for mapping in product(range(dst.size), repeat=src.size)
            if len(set(mapping)) == dst.size]


# -----------------------------------------------------------------------------
# -------------------------------- Credal sets --------------------------------
# -----------------------------------------------------------------------------


def _restricted_constraint(coefficients, relation):
    return LinearConstraint(coefficients, relation, 0)


@lru_cache(maxsize=2 ** 16)
def _polytope_empty(dimension, constraints):
    return strict_feasible(
        list(constraints) + [simplex_constraint(dimension)],
        dimension) is None


@lru_cache(maxsize=2 ** 16)
def _polytope_sup(dimension, constraints, coefficients):
    outcome = lp_solve(LpProblem(
        dimension, list(coefficients), 'max',
        [c.relaxed() for c in constraints] + [simplex_constraint(dimension)]))
    return outcome.value


@lru_cache(maxsize=2 ** 12)
def _polytope_vertices(dimension, constraints):
    return vertices([c.relaxed() for c in constraints], dimension)


@lru_cache(maxsize=2 ** 16)
def _derived_contains(x, pr):
    return x._contains(pr)


class CredalSet(abc.ABC):
    """Abstract base class for a set of probability measures on one space

    Subclasses decide membership for every concrete measure and compute
    exact suprema of linear functionals over the closure of the set."""

    #: The :class:`MeasureSpace` of the members
    space = None

    @abc.abstractmethod
    def contains(self, pr):
        """Decide whether `pr` is a member of the set"""

    @abc.abstractmethod
    def is_empty(self):
        """Decide whether the set has no member"""

    @abc.abstractmethod
    def sup(self, coefficients):
        """
        Supremum of a linear functional over the set

        Parameters
        ----------
        coefficients: tuple of fractions.Fraction
            One coefficient per atom

        Returns
        -------
        fractions.Fraction or None
            The exact supremum or None for the empty set"""

    def inf(self, coefficients):
        """Infimum of a linear functional, None for the empty set"""
        value = self.sup([-c for c in coefficients])
        return None if value is None else -value

    @abc.abstractmethod
    def restrict(self, coefficients, relation):
        """
        The members `pr` with ``coefficients . pr <relation> 0``

        Parameters
        ----------
        coefficients: tuple of fractions.Fraction
            One coefficient per atom
        relation: {'lt', 'le', 'eq'}
            The relation

        Returns
        -------
        CredalSet
            The restricted set in the same representation"""

    @abc.abstractmethod
    def candidates(self):
        """Measures derived from the structure of the set

        These are the members of a finite set, the vertices of the closure of
        a polytope and the images of the candidates of the base of a derived
        set"""

    def closure(self):
        return credal_closure(self)

    def _check(self, pr):
        _check_space(pr, self.space)

    @abc.abstractmethod
    def to_json(self):
        pass

    def sup_prob(self, event):
        return self.sup(event.indicator())

    def restrict_prob(self, event, relation, bound):
        """The members with ``Pr(event) <relation> bound``"""
        return self.restrict([c - Fraction(bound) for c in event.indicator()],
                             relation)


class FiniteSet(CredalSet):
    """A finite set of measures, deduplicated with the order preserved"""

    def __init__(self, space, measures=()):
        self.space = space
        self.measures = tuple(unique_everseen(measures))
        for pr in self.measures:
            self._check(pr)

    def contains(self, pr):
        self._check(pr)
        return pr in self.measures

    def is_empty(self):
        return not self.measures

    def __len__(self):
        return len(self.measures)

    def __iter__(self):
        return iter(self.measures)

    def __eq__(self, other):
        return (isinstance(other, FiniteSet) and self.space == other.space and
                set(self.measures) == set(other.measures))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.space, frozenset(self.measures)))

    def sup(self, coefficients):
        if not self.measures:
            return None
        return max(pr.dot(coefficients) for pr in self.measures)

    def restrict(self, coefficients, relation):
        constraint = _restricted_constraint(coefficients, relation)
        return FiniteSet(self.space, [
            pr for pr in self.measures if constraint.holds(pr.weights)])

    def candidates(self):
        return list(self.measures)

    def to_json(self):
        return [pr.to_json() for pr in self.measures]

    def __repr__(self):
        return 'FiniteSet[%s]' % (', '.join(map(repr, self.measures)), )


class Polytope(CredalSet):
    """The measures satisfying a list of linear constraints

    The simplex constraints are implicit. Strict constraints (``'lt'``) are
    first class, hence the set need not be closed."""

    def __init__(self, space, constraints=()):
        self.space = space
        self.constraints = tuple(constraints)
        for c in self.constraints:
            if c.dimension != space.size:
                raise SpaceMismatch(
                    "Constraint with %i coefficients on a space with %i "
                    "atoms" % (c.dimension, space.size))

    @classmethod
    def simplex(cls, space):
        return cls(space)

    @classmethod
    def certain(cls, b):
        """The polytope ``{Pr : Pr(b) = 1}``"""
        return cls(b.space, [LinearConstraint(b.indicator(), 'eq', 1)])

    @property
    def is_closed(self):
        return all(c.relation != 'lt' for c in self.constraints)

    def all_constraints(self):
        return list(self.constraints) + [simplex_constraint(self.space.size)]

    def contains(self, pr):
        self._check(pr)
        return all(c.holds(pr.weights) for c in self.constraints)

    def is_empty(self):
        return _polytope_empty(self.space.size, self.constraints)

    def sup(self, coefficients):
        if self.is_empty():
            return None
        return _polytope_sup(self.space.size, self.constraints,
                             tuple(map(Fraction, coefficients)))

    def restrict(self, coefficients, relation):
        return Polytope(self.space, self.constraints + (
            _restricted_constraint(coefficients, relation), ))

    def with_constraint(self, constraint):
        return Polytope(self.space, self.constraints + (constraint, ))

    def candidates(self):
        if self.space.size > MAX_VERTEX_DIMENSION:
            logger.debug('No vertex candidates on %i atoms', self.space.size)
            return []
        return [Measure(self.space, v) for v in _polytope_vertices(
            self.space.size, self.constraints)]

    def to_json(self):
        ret = [{'coeffs': list(map(format_rational, c.coefficients)),
                'rel': c.relation, 'bound': format_rational(c.bound)}
               for c in self.constraints]
        # the empty list is the empty finite set
        return ret if ret else {'constraints': []}

    def __eq__(self, other):
        return (isinstance(other, Polytope) and self.space == other.space and
                self.constraints == other.constraints)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.space, self.constraints))

    def __repr__(self):
        return 'Polytope[%s]' % (json.dumps(self.to_json()), )


#: Operations of a :class:`Derived` set
DERIVED_OPS = ('cond', 'push', 'union')


class Derived(CredalSet):
    """
    A set given as the image of another credal set

    Parameters
    ----------
    base: CredalSet or tuple of CredalSet
        The base set, or the branches for ``op == 'union'``
    op: {'cond', 'push', 'union'}
        ``'cond'``: the conditionals ``Pr(. | arg)`` of the members with
        ``Pr(arg) > 0``. ``'push'``: the pushforwards under the
        :class:`RepShift` `arg`. ``'union'``: the union of the branches
        in `base` with `arg` being the space
    arg: Event or RepShift or MeasureSpace
        The argument of the operation

    Notes
    -----
    Chains of ``'cond'`` and ``'push'`` are compiled into a root set and a
    matrix ``M`` such that the members are ``M x / (1 . M x)`` for the root
    members ``x`` with ``1 . M x > 0``. Membership and emptiness are then
    strict feasibility problems and suprema linear-fractional programs."""

    def __init__(self, base, op, arg):
        if op not in DERIVED_OPS:
            raise ValueError("Unknown operation %r" % (op, ))
        self.op = op
        self.arg = arg
        if op == 'union':
            self.base = tuple(base)
            self.space = arg
        elif op == 'cond':
            if arg.space != base.space:
                raise SpaceMismatch("Conditioning %r on %r" % (base, arg))
            self.base = base
            self.space = base.space
        else:
            if arg.source != base.space:
                raise SpaceMismatch("Pushing %r forward under %r" % (
                    base, arg))
            self.base = base
            self.space = arg.target
        self._compiled = None

    @classmethod
    def union(cls, space, branches):
        return cls(tuple(branches), 'union', space)

    def __getstate__(self):
        return {'base': self.base, 'op': self.op, 'arg': self.arg}

    def __setstate__(self, state):
        self.__init__(state['base'], state['op'], state['arg'])

    def __eq__(self, other):
        return (isinstance(other, Derived) and self.op == other.op and
                self.arg == other.arg and self.base == other.base)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.op, self.arg, self.base))

    def compiled(self):
        """The root set and the matrix of the chain of linear maps"""
        if self.op == 'union':
            raise UnsupportedRepresentation("Unions are not compiled")
        if self._compiled is None:
            base = self.base
            if isinstance(base, Derived) and base.op != 'union':
                root, matrix = base.compiled()
            elif isinstance(base, Derived):
                raise UnsupportedRepresentation(
                    "Images of unions are not supported")
            else:
                n = base.space.size
                root = base
                matrix = [[Fraction(int(i == j)) for j in range(n)]
                          for i in range(n)]
            if self.op == 'cond':
                matrix = [row if i in self.arg else [Fraction(0)] * len(row)
                          for i, row in enumerate(matrix)]
            else:
                shift = self.arg.matrix()
                matrix = [[sum((s * matrix[k][j] for k, s in enumerate(srow)),
                               Fraction(0)) for j in range(len(matrix[0]))]
                          for srow in shift]
            self._compiled = (root, matrix)
        return self._compiled

    def _image(self, x):
        """The member induced by the root member `x` or None"""
        root, matrix = self.compiled()
        y = [sum((a * b for a, b in zip(row, x.weights)), Fraction(0))
             for row in matrix]
        total = sum(y)
        if total == 0:
            return None
        return Measure(self.space, [v / total for v in y])

    def _pulled_back(self, coefficients):
        """``coefficients . M`` as coefficients on the root space"""
        root, matrix = self.compiled()
        return [sum((c * row[j] for c, row in zip(coefficients, matrix)),
                    Fraction(0)) for j in range(root.space.size)]

    def _denominator(self):
        return self._pulled_back([Fraction(1)] * self.space.size)

    def contains(self, pr):
        self._check(pr)
        if self.op == 'union':
            return any(branch.contains(pr) for branch in self.base)
        root, matrix = self.compiled()
        if isinstance(root, FiniteSet):
            return any(self._image(x) == pr for x in root)
        return _derived_contains(self, pr)

    def _contains(self, pr):
        root, matrix = self.compiled()
        n = root.space.size
        # x in root, M x - t pr = 0, t > 0
        constraints = [c.padded(after=1) for c in root.all_constraints()]
        for row, w in zip(matrix, pr.weights):
            constraints.append(LinearConstraint(list(row) + [-w], 'eq', 0))
        constraints.append(LinearConstraint([0] * n + [-1], 'lt', 0))
        return strict_feasible(constraints, n + 1) is not None

    def is_empty(self):
        if self.op == 'union':
            return all(branch.is_empty() for branch in self.base)
        root, matrix = self.compiled()
        if isinstance(root, FiniteSet):
            return all(self._image(x) is None for x in root)
        constraints = root.all_constraints() + [LinearConstraint(
            [-v for v in self._denominator()], 'lt', 0)]
        return strict_feasible(constraints, root.space.size) is None

    def sup(self, coefficients):
        if self.op == 'union':
            values = [v for v in (b.sup(coefficients) for b in self.base)
                      if v is not None]
            return max(values) if values else None
        root, matrix = self.compiled()
        if isinstance(root, FiniteSet):
            images = [pr for pr in map(self._image, root) if pr is not None]
            if not images:
                return None
            return max(pr.dot(coefficients) for pr in images)
        if self.is_empty():
            return None
        outcome = lfp_solve(root.all_constraints(), root.space.size,
                            self._pulled_back(coefficients),
                            self._denominator())
        return outcome.value

    def argsup(self, coefficients):
        """A member of the closure attaining :meth:`sup` or None"""
        root, matrix = self.compiled()
        if isinstance(root, FiniteSet):
            value = self.sup(coefficients)
            return next((pr for pr in map(self._image, root)
                         if pr is not None and pr.dot(coefficients) == value),
                        None)
        outcome = lfp_solve(root.all_constraints(), root.space.size,
                            self._pulled_back(coefficients),
                            self._denominator())
        if not isinstance(outcome, Optimal):
            return None
        return self._image(Measure(root.space, outcome.point))

    def restrict(self, coefficients, relation):
        if self.op == 'union':
            return Derived.union(self.space, [
                b.restrict(coefficients, relation) for b in self.base])
        if self.op == 'cond':
            pulled = [c if i in self.arg else Fraction(0)
                      for i, c in enumerate(coefficients)]
        else:
            pulled = [coefficients[j] for j in self.arg.mapping]
        return Derived(self.base.restrict(pulled, relation), self.op,
                       self.arg)

    def candidates(self):
        if self.op == 'union':
            return list(unique_everseen(chain.from_iterable(
                b.candidates() for b in self.base)))
        root, matrix = self.compiled()
        return list(unique_everseen(
            pr for pr in map(self._image, root.candidates())
            if pr is not None))

    def to_json(self):
        if self.op == 'union':
            return {'op': 'union',
                    'branches': [b.to_json() for b in self.base]}
        ret = {'op': self.op, 'base_space': self.base.space.to_json(),
               'base': self.base.to_json()}
        if self.op == 'cond':
            ret['event'] = self.arg.to_json()
        else:
            ret['shift'] = self.arg.to_json()
        return ret

    def __repr__(self):
        if self.op == 'union':
            return 'Union[%s]' % (', '.join(map(repr, self.base)), )
        return '%s[%r, %r]' % (self.op.capitalize(), self.base, self.arg)


def empty_set(space):
    """The empty credal set on `space`"""
    return FiniteSet(space)


def union_sets(space, sets):
    """
    The union of credal sets on one space

    Finite sets are merged into one :class:`FiniteSet`, empty sets are
    dropped."""
    sets = [s for s in sets if not (isinstance(s, FiniteSet) and s.is_empty())]
    for s in sets:
        if s.space != space:
            raise SpaceMismatch("Union of sets on %r and %r" % (
                space, s.space))
    if all(isinstance(s, FiniteSet) for s in sets):
        return FiniteSet(space, chain.from_iterable(sets))
    finite = [s for s in sets if isinstance(s, FiniteSet)]
    others = [s for s in sets if not isinstance(s, FiniteSet)]
    if finite:
        others.insert(0, FiniteSet(space, chain.from_iterable(finite)))
    if len(others) == 1:
        return others[0]
    return Derived.union(space, others)


def condition_set(x, b):
    """The set ``{Pr(. | b) : Pr in x, Pr(b) > 0}``"""
    if x.space != b.space:
        raise SpaceMismatch("Conditioning %r on %r" % (x, b))
    if isinstance(x, FiniteSet):
        return FiniteSet(x.space, [conditional(pr, b) for pr in x
                                   if pr.prob(b) > 0])
    if isinstance(x, Derived) and x.op == 'union':
        return union_sets(x.space, [condition_set(br, b) for br in x.base])
    return Derived(x, 'cond', b)


def pushforward_set(f, x):
    """The image of the credal set `x` under the shift `f`"""
    if x.space != f.source:
        raise SpaceMismatch("Pushing %r forward under %r" % (x, f))
    if isinstance(x, FiniteSet):
        return FiniteSet(f.target, [pushforward(f, pr) for pr in x])
    if isinstance(x, Derived) and x.op == 'union':
        return union_sets(f.target, [pushforward_set(f, br) for br in x.base])
    return Derived(x, 'push', f)


def credal_membership(x, pr):
    """Decide whether `pr` is a member of the credal set `x`"""
    return x.contains(pr)


def credal_closure(x):
    """
    The topological closure of a finite set or a polytope

    Raises
    ------
    UnsupportedRepresentation
        For :class:`Derived` sets"""
    if isinstance(x, FiniteSet):
        return x
    if isinstance(x, Polytope):
        if x.is_closed:
            return x
        return Polytope(x.space, [c.relaxed() for c in x.constraints])
    raise UnsupportedRepresentation(
        "The closure of derived sets is not supported")


EqualOnCandidates = namedtuple('EqualOnCandidates', ['checked'])

EqualOnCandidates = append_doc(EqualOnCandidates, docstrings.dedent("""
    No candidate distinguishes the two sets. This is not a proof of equality

    Parameters
    ----------
    checked: int
        The number of probed candidates"""))


Differ = namedtuple('Differ', ['witness', 'in_first'])

Differ = append_doc(Differ, docstrings.dedent("""
    A candidate that is a member of exactly one of two sets

    Parameters
    ----------
    witness: Measure
        The distinguishing measure
    in_first: bool
        True if `witness` is a member of the first set"""))


def credal_equal_probe(x, y, candidates=()):
    """
    Compare two credal sets on a list of candidate measures

    The candidates are the structural candidates of `x`, then those of `y`
    and finally the given `candidates`.

    Parameters
    ----------
    x: CredalSet
        The first set
    y: CredalSet
        The second set on the same space
    candidates: list of Measure
        Further measures to probe, e.g. grid measures

    Returns
    -------
    EqualOnCandidates or Differ
        The first distinguishing candidate if there is any"""
    if x.space != y.space:
        raise SpaceMismatch("Comparing sets on %r and %r" % (
            x.space, y.space))
    if isinstance(x, FiniteSet) and isinstance(y, FiniteSet) and x == y:
        return EqualOnCandidates(len(x))
    pool = unique_everseen(chain(x.candidates(), y.candidates(), (
        pr for pr in candidates if pr.space == x.space)))
    checked = 0
    for pr in pool:
        checked += 1
        in_x = x.contains(pr)
        if in_x != y.contains(pr):
            return Differ(pr, in_x)
    return EqualOnCandidates(checked)


# -----------------------------------------------------------------------------
# ---------------------------------- JSON -------------------------------------
# -----------------------------------------------------------------------------


def loads(text, what='input'):
    """Parse JSON text, raising :class:`InputError` with the position"""
    try:
        return json.loads(text)
    except ValueError as e:
        raise InputError("Invalid JSON in %s: %s" % (what, e))


def space_from_json(obj):
    if not isinstance(obj, list):
        raise InputError("A space must be a list of labels, not %r" % (obj, ))
    return MeasureSpace(obj)


def event_from_json(space, obj):
    if isinstance(obj, str):
        obj = loads(obj, 'event')
    if not isinstance(obj, list):
        raise InputError("An event must be a list of labels, not %r" % (
            obj, ))
    return space.event(obj)


def measure_from_json(space, obj):
    if not isinstance(obj, dict):
        raise InputError("A measure must be an object, not %r" % (obj, ))
    unknown = set(obj) - set(space.atoms)
    if unknown:
        raise InputError("Unknown atoms %s" % (sorted(unknown), ))
    try:
        return Measure(space, [to_rational(obj.get(a, '0'))
                               for a in space.atoms])
    except InvalidMeasure as e:
        raise InputError(str(e))


def parse_measure(space, text):
    """
    Parse a measure from the command line

    Parameters
    ----------
    space: MeasureSpace
        The space of the measure
    text: str
        ``'uniform'``, a tuple of rationals in atom order such as
        ``'(1/4,1/4,1/2)'`` or a JSON object mapping labels to ``'p/q'``

    Returns
    -------
    Measure
        The parsed measure"""
    text = text.strip()
    if text == 'uniform':
        return Measure.uniform(space)
    if text.startswith('('):
        if not text.endswith(')'):
            raise InputError("Unbalanced parenthesis in %r" % (text, ))
        values = [to_rational(v) for v in text[1:-1].split(',') if v.strip()]
        try:
            return Measure(space, values)
        except InvalidMeasure as e:
            raise InputError(str(e))
    return measure_from_json(space, loads(text, 'measure'))


def constraint_from_json(space, obj):
    try:
        coeffs = obj['coeffs']
        rel = obj['rel']
        bound = obj['bound']
    except (KeyError, TypeError):
        raise InputError("A constraint needs 'coeffs', 'rel' and 'bound', "
                         "got %r" % (obj, ))
    if isinstance(coeffs, dict):
        coeffs = [coeffs.get(a, '0') for a in space.atoms]
    if len(coeffs) != space.size:
        raise InputError("Constraint %r has %i coefficients for %i atoms" % (
            obj, len(coeffs), space.size))
    if rel not in ('lt', 'le', 'eq'):
        raise InputError("Unknown relation %r" % (rel, ))
    return LinearConstraint(list(map(to_rational, coeffs)), rel,
                            to_rational(bound))


def shift_from_json(obj):
    try:
        source = space_from_json(obj['source'])
        target = space_from_json(obj['target'])
        return RepShift.from_labels(source, target, obj['map'])
    except (KeyError, TypeError) as e:
        raise InputError("Invalid shift %r: %s" % (obj, e))


def credal_from_json(space, obj):
    """
    Decode a credal set

    A list of measure objects is a :class:`FiniteSet`, a list of constraint
    objects a :class:`Polytope` (the empty list is the empty set, the
    simplex is ``{"constraints": []}``) and an object with an ``'op'``
    key a :class:`Derived` set"""
    if isinstance(obj, dict) and 'op' in obj:
        op = obj['op']
        if op == 'union':
            return Derived.union(space, [
                credal_from_json(space, b) for b in obj.get('branches', [])])
        base_space = space_from_json(obj.get('base_space', space.atoms))
        base = credal_from_json(base_space, obj.get('base'))
        if op == 'cond':
            return Derived(base, 'cond', event_from_json(
                base_space, obj.get('event')))
        elif op == 'push':
            return Derived(base, 'push', shift_from_json(obj.get('shift')))
        raise InputError("Unknown operation %r" % (op, ))
    if isinstance(obj, dict) and 'constraints' in obj:
        return Polytope(space, [
            constraint_from_json(space, o) for o in obj['constraints']])
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise InputError("Cannot interpret %r as a credal set" % (obj, ))
    if obj and all(isinstance(o, dict) and 'coeffs' in o for o in obj):
        return Polytope(space, [constraint_from_json(space, o) for o in obj])
    return FiniteSet(space, [measure_from_json(space, o) for o in obj])


def polytope_vertices(x):
    """Vertices of the closure of a polytope as measures"""
    if x.space.size > MAX_VERTEX_DIMENSION:
        raise DimensionTooLarge("%i atoms" % (x.space.size, ))
    return Polytope(x.space, [c.relaxed() for c in x.constraints]).candidates()
