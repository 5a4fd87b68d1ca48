"""Exact rational linear programming

This module contains a dense tableau simplex method over
:class:`fractions.Fraction` with Bland's rule, the strict feasibility test
for systems with ``<`` relations, the linear-fractional optimum via the
homogenizing substitution and a brute force vertex enumeration for small
polytopes.

All variables of the problems in this module are implicitly nonnegative."""
import logging
from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from credalaudit.utils import (
    docstrings, append_doc, unique_everseen, DimensionTooLarge,
    PreconditionViolated)


logger = logging.getLogger(__name__)


#: Maximal number of variables accepted by :func:`vertices`
MAX_VERTEX_DIMENSION = 6

#: Accepted relations of a :class:`LinearConstraint`
RELATIONS = ('lt', 'le', 'eq')


_LinearConstraint = namedtuple(
    'LinearConstraint', ['coefficients', 'relation', 'bound'])


class LinearConstraint(_LinearConstraint):
    """A linear constraint ``coefficients . x <relation> bound``"""
    __slots__ = ()

    def __new__(cls, coefficients, relation, bound):
        if relation not in RELATIONS:
            raise ValueError("Relation must be one of %s, not %r" % (
                ', '.join(RELATIONS), relation))
        return super(LinearConstraint, cls).__new__(
            cls, tuple(map(Fraction, coefficients)), relation,
            Fraction(bound))

    @classmethod
    def ge(cls, coefficients, bound):
        """Constraint ``coefficients . x >= bound`` stored as ``<=``"""
        return cls([-c for c in coefficients], 'le', -Fraction(bound))

    @classmethod
    def gt(cls, coefficients, bound):
        """Constraint ``coefficients . x > bound`` stored as ``<``"""
        return cls([-c for c in coefficients], 'lt', -Fraction(bound))

    @property
    def dimension(self):
        return len(self.coefficients)

    def lhs(self, point):
        return sum(c * v for c, v in zip(self.coefficients, point))

    def holds(self, point):
        """Check whether the constraint holds exactly at `point`"""
        lhs = self.lhs(point)
        if self.relation == 'lt':
            return lhs < self.bound
        elif self.relation == 'le':
            return lhs <= self.bound
        return lhs == self.bound

    def relaxed(self):
        """The constraint with ``<`` replaced by ``<=``"""
        if self.relation == 'lt':
            return self._replace(relation='le')
        return self

    def padded(self, before=0, after=0):
        """The constraint embedded into a larger variable vector"""
        return self._replace(coefficients=(
            (Fraction(0), ) * before + self.coefficients +
            (Fraction(0), ) * after))


LinearConstraint = append_doc(LinearConstraint, docstrings.dedent("""
    Parameters
    ----------
    coefficients: tuple of fractions.Fraction
        One coefficient per variable (the atoms of a measure space)
    relation: {'lt', 'le', 'eq'}
        The relation, ``<``, ``<=`` or ``=``
    bound: fractions.Fraction
        The right hand side"""))


def simplex_constraint(dimension):
    """The constraint that the variables sum up to 1"""
    return LinearConstraint([1] * dimension, 'eq', 1)


LpProblem = namedtuple(
    'LpProblem', ['dimension', 'objective', 'sense', 'constraints'])

LpProblem = append_doc(LpProblem, docstrings.get_sections("""
A linear program over nonnegative variables

Parameters
----------
dimension: int
    The number of variables
objective: list of fractions.Fraction
    The coefficients of the objective
sense: {'max', 'min'}
    Whether to maximize or minimize the objective
constraints: list of LinearConstraint
    The constraints with relations ``'le'`` or ``'eq'``
""", 'LpProblem'))


Optimal = namedtuple('Optimal', ['value', 'point'])


class Infeasible(namedtuple('Infeasible', [])):
    """The feasible region is empty"""
    __slots__ = ()


class Unbounded(namedtuple('Unbounded', [])):
    """The objective is unbounded on the feasible region"""
    __slots__ = ()


def _pivot(tableau, cost, row, col):
    pivot = tableau[row][col]
    prow = [v / pivot for v in tableau[row]]
    tableau[row] = prow
    for i, r in enumerate(tableau):
        factor = r[col]
        if i != row and factor:
            tableau[i] = [a - factor * b for a, b in zip(r, prow)]
    factor = cost[col]
    if factor:
        cost[:] = [a - factor * b for a, b in zip(cost, prow)]


def _run_simplex(tableau, basis, cost, columns):
    """Maximize with Bland's rule. Returns False if unbounded

    `cost` holds the reduced costs and, as last entry, the negative objective
    value of the current basic solution"""
    npivots = 0
    while True:
        col = next((j for j in columns if cost[j] > 0), None)
        if col is None:
            logger.debug('Optimum reached after %i pivots', npivots)
            return True
        best = None
        for i, r in enumerate(tableau):
            if r[col] > 0:
                ratio = r[-1] / r[col]
                if (best is None or ratio < best[0] or
                        (ratio == best[0] and basis[i] < basis[best[1]])):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tableau, cost, best[1], col)
        basis[best[1]] = col
        npivots += 1


def _reduced_costs(objective, tableau, basis):
    cost = list(objective) + [Fraction(0)]
    for i, r in enumerate(tableau):
        cb = objective[basis[i]]
        if cb:
            cost = [a - cb * b for a, b in zip(cost, r)]
    return cost


@docstrings.dedent
def lp_solve(problem):
    """
    Solve a linear program exactly

    The two-phase simplex method works on a dense tableau of fractions and
    uses Bland's rule (lowest index entering variable, ties in the ratio test
    broken by the lowest basis index), hence it is deterministic and never
    cycles.

    Parameters
    ----------
    problem: LpProblem
        The problem to solve. All variables are nonnegative

    Returns
    -------
    Optimal or Infeasible or Unbounded
        The outcome. The point of an :class:`Optimal` outcome is a basic
        feasible solution"""
    n = problem.dimension
    objective = [Fraction(c) for c in problem.objective]
    if len(objective) != n:
        raise ValueError("Objective has %i coefficients for %i variables" % (
            len(objective), n))
    if problem.sense == 'min':
        objective = [-c for c in objective]
    elif problem.sense != 'max':
        raise ValueError("Unknown sense %r" % (problem.sense, ))
    constraints = list(problem.constraints)
    nslack = sum(c.relation == 'le' for c in constraints)
    total = n + nslack
    rows = []
    islack = n
    for c in constraints:
        if c.relation == 'lt':
            raise ValueError(
                "Strict constraints are only handled by strict_feasible")
        if len(c.coefficients) != n:
            raise ValueError("Constraint has %i coefficients for %i "
                             "variables" % (len(c.coefficients), n))
        row = list(c.coefficients) + [Fraction(0)] * nslack
        if c.relation == 'le':
            row[islack] = Fraction(1)
            islack += 1
        rhs = c.bound
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [rhs])
    m = len(rows)

    # phase 1 with one artificial variable per row
    tableau = [
        r[:-1] + [Fraction(int(i == j)) for j in range(m)] + [r[-1]]
        for i, r in enumerate(rows)]
    basis = [total + i for i in range(m)]
    cost = [sum((r[j] for r in tableau), Fraction(0))
            for j in range(total)] + [Fraction(0)] * m + [
                sum((r[-1] for r in tableau), Fraction(0))]
    _run_simplex(tableau, basis, cost, range(total + m))
    if cost[-1] != 0:
        return Infeasible()
    # drive the artificial variables out of the basis
    i = 0
    while i < len(tableau):
        if basis[i] >= total:
            col = next((j for j in range(total) if tableau[i][j] != 0), None)
            if col is None:
                # redundant row
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, cost, i, col)
            basis[i] = col
        i += 1
    tableau = [r[:total] + [r[-1]] for r in tableau]

    # phase 2
    full_objective = objective + [Fraction(0)] * nslack
    cost = _reduced_costs(full_objective, tableau, basis)
    if not _run_simplex(tableau, basis, cost, range(total)):
        return Unbounded()
    point = [Fraction(0)] * total
    for i, r in enumerate(tableau):
        point[basis[i]] = r[-1]
    value = -cost[-1]
    if problem.sense == 'min':
        value = -value
    return Optimal(value, tuple(point[:n]))


def strict_feasible(constraints, dimension):
    """
    Find a point that satisfies a system with strict constraints

    The strict constraints share one slack variable ``s`` that is maximized
    subject to ``lhs + s <= bound``, ``0 <= s <= 1``.

    Parameters
    ----------
    constraints: list of LinearConstraint
        The system, relations ``'lt'``, ``'le'`` and ``'eq'``
    dimension: int
        The number of (nonnegative) variables

    Returns
    -------
    tuple of fractions.Fraction or None
        A point satisfying every constraint, the strict ones strictly, or
        None if there is no such point"""
    constraints = list(constraints)
    if not any(c.relation == 'lt' for c in constraints):
        outcome = lp_solve(LpProblem(
            dimension, [0] * dimension, 'max', constraints))
        return outcome.point if isinstance(outcome, Optimal) else None
    lifted = []
    for c in constraints:
        if c.relation == 'lt':
            lifted.append(LinearConstraint(
                c.coefficients + (1, ), 'le', c.bound))
        else:
            lifted.append(c.padded(after=1))
    lifted.append(LinearConstraint([0] * dimension + [1], 'le', 1))
    outcome = lp_solve(LpProblem(
        dimension + 1, [0] * dimension + [1], 'max', lifted))
    if not isinstance(outcome, Optimal) or outcome.value <= 0:
        return None
    point = outcome.point[:dimension]
    assert all(c.holds(point) for c in constraints), (
        "Slack optimum %s does not satisfy the strict system" % (
            outcome.value, ))
    return point


def lfp_solve(constraints, dimension, numerator, denominator, sense='max'):
    """
    Optimize a ratio of linear functions over a polytope

    The problem ``numerator . x / denominator . x`` over the closed system
    `constraints` (with ``denominator . x > 0``) is turned into a linear
    program by substituting ``y = s x`` with ``s = 1 / denominator . x``.
    The system must be bounded, e.g. contain :func:`simplex_constraint`.

    Parameters
    ----------
    constraints: list of LinearConstraint
        The constraints on `x`, strict ones are relaxed
    dimension: int
        The number of variables of `x`
    numerator: list of fractions.Fraction
        The linear numerator
    denominator: list of fractions.Fraction
        The linear denominator
    sense: {'max', 'min'}
        Whether to maximize or minimize

    Returns
    -------
    Optimal or Infeasible
        The exact optimum with the optimal `x`, or :class:`Infeasible` if no
        feasible `x` has a positive denominator"""
    homogenized = [
        LinearConstraint(
            c.coefficients + (-c.bound, ), c.relaxed().relation, 0)
        for c in constraints]
    homogenized.append(LinearConstraint(list(denominator) + [0], 'eq', 1))
    outcome = lp_solve(LpProblem(
        dimension + 1, list(numerator) + [0], sense, homogenized))
    if not isinstance(outcome, Optimal):
        return outcome
    s = outcome.point[-1]
    if s == 0:
        # only reachable for unbounded systems
        return Unbounded()
    return Optimal(outcome.value, tuple(v / s for v in outcome.point[:-1]))


def _solve_square(rows, rhs):
    """Gaussian elimination, None for singular systems"""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for i in range(n):
            f = a[i][col]
            if i != col and f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(r[-1] for r in a)


def _independent(equalities):
    """Linearly independent subset of equalities, None if inconsistent"""
    kept = []
    echelon = []  # (pivot column, normalized augmented row)
    for c in equalities:
        row = list(c.coefficients) + [c.bound]
        for col, prow in echelon:
            f = row[col]
            if f:
                row = [a - f * b for a, b in zip(row, prow)]
        col = next((j for j, v in enumerate(row[:-1]) if v != 0), None)
        if col is None:
            if row[-1] != 0:
                return None
            continue
        p = row[col]
        row = [v / p for v in row]
        echelon = [(j, [a - r[col] * b for a, b in zip(r, row)])
                   for j, r in echelon]
        echelon.append((col, row))
        kept.append(c)
    return kept


def _implied_by_nonnegativity(c):
    return (c.relation == 'le' and c.bound >= 0 and
            all(v <= 0 for v in c.coefficients))


def vertices(constraints, dimension):
    """
    Enumerate the extreme points of a closed polytope in the simplex

    Every subset of `dimension` constraints (the simplex constraints
    included) is solved as an equation system, and the feasible solutions are
    collected.

    Parameters
    ----------
    constraints: list of LinearConstraint
        Non-strict constraints. The simplex constraints are added
    dimension: int
        The number of variables, at most :data:`MAX_VERTEX_DIMENSION`

    Returns
    -------
    list of tuple
        The exact vertices, deduplicated and sorted in descending
        lexicographic order

    Raises
    ------
    DimensionTooLarge
        If `dimension` exceeds :data:`MAX_VERTEX_DIMENSION`"""
    if dimension > MAX_VERTEX_DIMENSION:
        raise DimensionTooLarge(
            "Vertex enumeration is limited to %i atoms, not %i" % (
                MAX_VERTEX_DIMENSION, dimension))
    constraints = list(constraints)
    if any(c.relation == 'lt' for c in constraints):
        raise PreconditionViolated(
            "Vertex enumeration requires a closed polytope")
    if any(not any(c.coefficients) and not c.holds(c.coefficients)
           for c in constraints):
        return []
    user = list(unique_everseen(
        c for c in constraints if not _implied_by_nonnegativity(c) and
        any(c.coefficients)))
    system = [simplex_constraint(dimension)] + user
    system += [LinearConstraint([-int(i == j) for j in range(dimension)],
                                'le', 0) for i in range(dimension)]
    equalities = _independent(c for c in system if c.relation == 'eq')
    if equalities is None:
        return []
    inequalities = [c for c in system if c.relation != 'eq']
    subsets = (equalities + list(comb) for comb in combinations(
        inequalities, dimension - len(equalities)))
    found = set()
    for subset in subsets:
        point = _solve_square([c.coefficients for c in subset],
                              [c.bound for c in subset])
        if point is not None and all(c.holds(point) for c in system):
            found.add(point)
    return sorted(found, reverse=True)