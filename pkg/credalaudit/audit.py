"""The audit of update rules against the postulates

This module generates the exhaustive fixture pools of an audit, runs every
rule against every postulate (optionally on several processes), shrinks the
counterexamples and assembles the :class:`AuditReport`."""
import json
import logging
import multiprocessing as mp
from collections import namedtuple, OrderedDict
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import chain, combinations
from math import gcd
import numpy as np
import credalaudit
from credalaudit.utils import (
    docstrings, append_doc, unique_everseen, to_rational, format_rational,
    get_nprocs, InputError, HypothesisNotMet, InvalidMeasure)
from credalaudit.lp import LinearConstraint
from credalaudit.measures import (
    MeasureSpace, Measure, Event, FiniteSet, Polytope, RepShift,
    grid_measures, enumerate_surjections)
from credalaudit.rules import RULE_NAMES, get_rule, rule_name
from credalaudit.postulates import (
    POSTULATES, CORE_POSTULATES, PROPOSITIONS, Fixture, Pass, Fail,
    Inconclusive, PostulateCheck, check_core_postulate,
    check_p6, check_proposition, continuity_probe, get_check,
    singleton_fixtures, supprob_eval, supprob_xy, update_measure,
    verdict_name, verdict_to_json, format_value)


logger = logging.getLogger(__name__)


#: Postulates that a rule must pass to survive the characterization without
#: P7
CHARACTERIZATION = ('P1', 'P2', 'P3', 'P4', 'P5', 'P6')


# -----------------------------------------------------------------------------
# ------------------------------- Configuration -------------------------------
# -----------------------------------------------------------------------------


AuditConfig = namedtuple(
    'AuditConfig', ['max_atoms', 'grid_denominators', 'family_depth',
                    'divergence_threshold', 'rng_seed', 'random_fixtures',
                    'rules', 'nprocs'])

AuditConfig = append_doc(AuditConfig, docstrings.get_sections("""
Parameters
----------
max_atoms: int
    The largest space of the fixture pools (between 1 and 5)
grid_denominators: tuple of int
    The denominators of the grid measures
family_depth: int
    The largest space ``M_n`` of the divergence probe of the bounded
    increase postulate
divergence_threshold: fractions.Fraction
    Constants beyond this threshold of a strictly increasing sequence count
    as divergent
rng_seed: int
    The seed for the extra random fixtures
random_fixtures: int
    The number of extra random measures added to the pool
rules: tuple of str
    The names of the audited rules
nprocs: int or 'all'
    The number of worker processes. If None, the ``CREDAL_AUDIT_JOBS``
    environment variable decides
""", 'AuditConfig'))


@docstrings.dedent
def default_audit_config(
        max_atoms=4, grid_denominators=(1, 2, 3, 4), family_depth=8,
        divergence_threshold=100, rng_seed=0, random_fixtures=0,
        rules=RULE_NAMES, nprocs=None):
    """
    The default configuration of an audit

    Parameters
    ----------
    %(AuditConfig.parameters)s"""
    return validate_config(AuditConfig(
        max_atoms, grid_denominators, family_depth, divergence_threshold,
        rng_seed, random_fixtures, rules, nprocs))


def validate_config(cfg):
    """
    Check and normalize an :class:`AuditConfig`

    Raises
    ------
    credalaudit.utils.InputError
        If a field is out of range"""
    max_atoms = int(cfg.max_atoms)
    if not 1 <= max_atoms <= 5:
        raise InputError("max_atoms must be between 1 and 5, not %r" % (
            cfg.max_atoms, ))
    grid = tuple(sorted(set(int(d) for d in cfg.grid_denominators)))
    if not grid or grid[0] < 1:
        raise InputError("Grid denominators must be positive, not %r" % (
            cfg.grid_denominators, ))
    if int(cfg.family_depth) < 3:
        raise InputError("family_depth must be at least 3, not %r" % (
            cfg.family_depth, ))
    threshold = to_rational(cfg.divergence_threshold)
    if threshold <= 0:
        raise InputError("The divergence threshold must be positive")
    if int(cfg.random_fixtures) < 0:
        raise InputError("random_fixtures must not be negative")
    rules = tuple(rule_name(get_rule(r)) for r in cfg.rules)
    if not rules:
        raise InputError("No rule to audit")
    return cfg._replace(max_atoms=max_atoms, grid_denominators=grid,
                        family_depth=int(cfg.family_depth),
                        divergence_threshold=threshold,
                        rng_seed=int(cfg.rng_seed),
                        random_fixtures=int(cfg.random_fixtures), rules=rules)


def config_to_json(cfg):
    return OrderedDict([
        ('max_atoms', cfg.max_atoms),
        ('grid_denominators', list(cfg.grid_denominators)),
        ('family_depth', cfg.family_depth),
        ('divergence_threshold', format_rational(cfg.divergence_threshold)),
        ('rng_seed', cfg.rng_seed),
        ('random_fixtures', cfg.random_fixtures),
        ('rules', list(cfg.rules))])


# -----------------------------------------------------------------------------
# ---------------------------------- Pools ------------------------------------
# -----------------------------------------------------------------------------


def _pool_key(cfg):
    return (cfg.max_atoms, cfg.grid_denominators, cfg.rng_seed,
            cfg.random_fixtures)


def standard_spaces(max_atoms):
    return [MeasureSpace.standard(n) for n in range(1, max_atoms + 1)]


def random_measures(max_atoms, count, seed):
    """Seeded random measures with denominators between 2 and 12"""
    rs = np.random.RandomState(seed)
    ret = []
    for i in range(count):
        n = int(rs.randint(1, max_atoms + 1))
        d = int(rs.randint(2, 13))
        counts = rs.multinomial(d, [1. / n] * n)
        ret.append(Measure(MeasureSpace.standard(n),
                           [Fraction(int(k), d) for k in counts]))
    return ret


@lru_cache(maxsize=None)
def _measure_pool(max_atoms, grid, seed, nrandom):
    ret = []
    for space in standard_spaces(max_atoms):
        ret.extend(unique_everseen(chain.from_iterable(
            grid_measures(space, d) for d in grid)))
    extra = random_measures(max_atoms, nrandom, seed) if nrandom else []
    return tuple(unique_everseen(ret + sorted(
        extra, key=lambda pr: (pr.space.size, pr.weights))))


def measure_pool(cfg):
    """All grid measures on the spaces M_1, ..., M_max_atoms"""
    return _measure_pool(*_pool_key(cfg))


@lru_cache(maxsize=None)
def _pair_pool(max_atoms, grid, seed, nrandom):
    measures = _measure_pool(max_atoms, grid, seed, nrandom)
    ret = []
    for space in standard_spaces(max_atoms):
        if space.size <= 3:
            pool = [pr for pr in measures if pr.space == space]
        elif space.size == 4:
            pool = list(unique_everseen(chain.from_iterable(
                grid_measures(space, d) for d in (1, 2))))
        else:
            continue
        ret.extend(FiniteSet(space, pair) for pair in combinations(pool, 2))
    return tuple(ret)


def pair_pool(cfg):
    """
    Finite sets with two members

    All pairs of pool measures on spaces with at most 3 atoms and the pairs
    of the measures with denominators 1 and 2 on M_4"""
    return _pair_pool(*_pool_key(cfg))


@lru_cache(maxsize=None)
def polytope_catalog(max_atoms):
    """The fixed catalog of polytope fixtures on M_2 and M_3"""
    ret = []
    half, third = Fraction(1, 2), Fraction(1, 3)
    if max_atoms >= 2:
        m2 = MeasureSpace.standard(2)
        ret.append(Polytope(m2, [LinearConstraint([0, 1], 'lt', 1)]))
        ret.append(Polytope.simplex(m2))
    if max_atoms >= 3:
        m3 = MeasureSpace.standard(3)
        ret.extend([
            Polytope(m3, [LinearConstraint.ge([1, 0, 0], half)]),
            Polytope(m3, [LinearConstraint.ge([1, 0, 0], third),
                          LinearConstraint([1, 0, 0], 'lt', 2 * third)]),
            Polytope(m3, [LinearConstraint.ge([0, 0, 1], half),
                          LinearConstraint.ge([1, 1, 0], half)]),
            Polytope(m3, [LinearConstraint([1, 1, 0], 'eq', 1)]),
            Polytope(m3, [LinearConstraint([0, 0, 1], 'eq', 0),
                          LinearConstraint([1, 0, 0], 'lt', 1)]),
            ])
    return tuple(ret)


def credal_pool(cfg, pairs_up_to=5):
    """The sets of the fixtures per space: singletons, pairs, polytopes"""
    measures = measure_pool(cfg)
    pairs = pair_pool(cfg)
    polytopes = polytope_catalog(cfg.max_atoms)
    ret = OrderedDict()
    for space in standard_spaces(cfg.max_atoms):
        ret[space] = (
            [FiniteSet(space, [pr]) for pr in measures if pr.space == space] +
            [x for x in pairs if x.space == space and
             space.size <= pairs_up_to] +
            [x for x in polytopes if x.space == space])
    return ret


def _nonempty_events(space):
    return space.events()[1:]


@lru_cache(maxsize=32)
def _core_fixtures(cfg, pid):
    pool = credal_pool(cfg, pairs_up_to=3 if pid == 'P2' else 5)
    ret = []
    if pid == 'P2':
        spaces = list(pool)
        for src in spaces:
            for dst in spaces:
                if dst.size > src.size:
                    continue
                for f in enumerate_surjections(src, dst):
                    ret.extend(
                        Fixture(src, x, b, shift=f) for x in pool[src]
                        for b in _nonempty_events(dst))
    elif pid == 'P3':
        for space, sets in pool.items():
            events = _nonempty_events(space)
            ret.extend(Fixture(space, x, b, c) for x in sets
                       for b in events for c in events)
    else:
        for space, sets in pool.items():
            ret.extend(Fixture(space, x, b) for x in sets
                       for b in _nonempty_events(space))
    return tuple(ret)


def core_fixtures(cfg, pid):
    """
    The fixtures of a postulate

    P2 fixtures combine every surjection between the pool spaces with the
    singletons, the pairs on at most three atoms and the polytopes of the
    source space. P3 fixtures take all pairs of nonempty events, the other
    postulates all nonempty events."""
    return _core_fixtures(cfg._replace(rules=(), nprocs=None), pid)


def pool_sizes(cfg):
    pool = credal_pool(cfg)
    spaces = list(pool)
    return OrderedDict([
        ('spaces', len(spaces)),
        ('measures', len(measure_pool(cfg))),
        ('pairs', len(pair_pool(cfg))),
        ('polytopes', len(polytope_catalog(cfg.max_atoms))),
        ('shifts', sum(len(enumerate_surjections(src, dst))
                       for src in spaces for dst in spaces)),
        ('fixtures', OrderedDict(
            (pid, len(core_fixtures(cfg, pid))) for pid in CORE_POSTULATES)),
        ])


# -----------------------------------------------------------------------------
# -------------------------- Witness minimization -----------------------------
# -----------------------------------------------------------------------------


def _restrict_event(e, keep, space):
    return Event(space, sum(1 << j for j, i in enumerate(keep) if i in e))


def _restrict_measure(pr, keep, space):
    weights = [pr.weights[i] for i in keep]
    total = sum(weights)
    if total == 0:
        return None
    return Measure(space, [w / total for w in weights])


def _restrict_set(x, keep, space):
    if not isinstance(x, FiniteSet):
        return None
    members = [_restrict_measure(pr, keep, space) for pr in x]
    if any(pr is None for pr in members):
        return None
    return FiniteSet(space, members)


def _drop_atoms(fixture):
    """Yield the fixtures with one atom less"""
    space = fixture.space
    if fixture.shift is None:
        if space.size < 2:
            return
        for i in range(space.size):
            keep = [j for j in range(space.size) if j != i]
            new = MeasureSpace([space.atoms[j] for j in keep])
            x = _restrict_set(fixture.x, keep, new)
            b = _restrict_event(fixture.b, keep, new)
            c = None if fixture.c is None else _restrict_event(
                fixture.c, keep, new)
            if x is None or b.is_empty() or (c is not None and c.is_empty()):
                continue
            yield Fixture(new, x, b, c)
        return
    f = fixture.shift
    target = f.target
    # source atoms first
    for i in range(space.size):
        if f.mapping.count(f.mapping[i]) < 2:
            continue
        keep = [j for j in range(space.size) if j != i]
        new = MeasureSpace([space.atoms[j] for j in keep])
        x = _restrict_set(fixture.x, keep, new)
        if x is None:
            continue
        shift = RepShift(new, target, [f.mapping[j] for j in keep])
        yield Fixture(new, x, fixture.b, shift=shift)
    if target.size < 2:
        return
    for t in range(target.size):
        keep_t = [j for j in range(target.size) if j != t]
        keep = [i for i in range(space.size) if f.mapping[i] != t]
        new_target = MeasureSpace([target.atoms[j] for j in keep_t])
        new = MeasureSpace([space.atoms[i] for i in keep])
        x = _restrict_set(fixture.x, keep, new)
        b = _restrict_event(fixture.b, keep_t, new_target)
        if x is None or b.is_empty():
            continue
        shift = RepShift(new, new_target,
                         [keep_t.index(f.mapping[i]) for i in keep])
        yield Fixture(new, x, b, shift=shift)


def _denominator(pr):
    return reduce(lambda a, b: a * b // gcd(a, b),
                  (w.denominator for w in pr.weights), 1)


def coarsen(pr, d):
    """
    Round a measure to multiples of ``1/d``

    The largest remainder method keeps the total mass, ties go to the atom
    with the lower index."""
    scaled = [w * d for w in pr.weights]
    units = [int(s) for s in scaled]
    order = sorted(range(len(scaled)),
                   key=lambda i: (-(scaled[i] - units[i]), i))
    for i in order[:d - sum(units)]:
        units[i] += 1
    return Measure(pr.space, [Fraction(u, d) for u in units])


def _coarsenings(fixture):
    x = fixture.x
    if not isinstance(x, FiniteSet):
        return
    for j, pr in enumerate(x.measures):
        for d in range(1, _denominator(pr)):
            new = coarsen(pr, d)
            if new == pr:
                continue
            members = list(x.measures)
            members[j] = new
            yield fixture._replace(x=FiniteSet(x.space, members))


@docstrings.dedent
def minimize_witness(witness):
    """
    Shrink the fixture of a counterexample

    Atoms are dropped as long as the check still fails (for representation
    shifts source atoms before target atoms), then the members are coarsened
    to the smallest denominators that still fail.

    Parameters
    ----------
    witness: credalaudit.postulates.Witness
        A replayable counterexample

    Returns
    -------
    credalaudit.postulates.Witness
        A counterexample on a fixture that is not larger than the original.
        Witnesses that do not belong to a fixture-level check are returned
        unchanged"""
    names = [cls.name for cls in PostulateCheck._registry]
    if witness.postulate not in names or witness.postulate == 'P7' or (
            isinstance(witness.observed, dict) and
            'family' in witness.observed):
        return witness
    check = get_check(witness.postulate, PostulateCheck._registry)
    rule = get_rule(witness.rule)
    strip = witness.postulate in ("P6''", 'P6*')

    def failing(fixture):
        if strip:
            fixture = fixture._replace(a=None)
        try:
            if not check.relevant(rule, fixture):
                return None
            return check.check_fixture(rule, fixture)
        except (InputError, InvalidMeasure) as e:
            logger.debug('Invalid shrunk fixture: %s', e)
            return None

    current = witness
    changed = True
    while changed:
        changed = False
        for fixture in _drop_atoms(current.fixture):
            new = failing(fixture)
            if new is not None:
                current, changed = new, True
                break
    changed = True
    while changed:
        changed = False
        for fixture in _coarsenings(current.fixture):
            new = failing(fixture)
            if new is not None:
                current, changed = new, True
                break
    if current is not witness:
        logger.debug('Shrunk %s witness of %s from %i to %i atoms',
                     witness.postulate, witness.rule,
                     witness.fixture.space.size, current.fixture.space.size)
    return current


def _minimized(verdict):
    if isinstance(verdict, Fail) and verdict.witness is not None:
        return verdict._replace(witness=minimize_witness(verdict.witness))
    return verdict


# -----------------------------------------------------------------------------
# ---------------------------------- Audit ------------------------------------
# -----------------------------------------------------------------------------


AuditReport = namedtuple(
    'AuditReport', ['config', 'matrix', 'supprob_tables', 'emptiness_census',
                    'propositions', 'characterization', 'provenance'])

AuditReport = append_doc(AuditReport, docstrings.get_sections("""
The outcome of :func:`run_matrix`

Parameters
----------
config: AuditConfig
    The configuration of the audit
matrix: collections.OrderedDict
    The verdicts, mapping ``(rule, postulate)`` to the verdict
supprob_tables: collections.OrderedDict
    Per rule the sampled values ``V(x, y)``
emptiness_census: collections.OrderedDict
    Per rule the number of empty updates of single measures
propositions: collections.OrderedDict
    The verdicts of the propositions, mapping ``(rule, proposition)`` to the
    verdict
characterization: collections.OrderedDict
    The rules surviving the postulates and the open conjecture
provenance: collections.OrderedDict
    Package version and pool sizes
""", 'AuditReport'))


def _matrix_worker(args):
    """Run one group of checks for one rule"""
    cfg, rule, group = args
    logger.debug('Checking %s of %s', group, rule)
    if group == 'P6':
        verdicts = check_p6(rule, cfg, measure_pool(cfg))
    else:
        verdicts = {group: check_core_postulate(
            group, rule, core_fixtures(cfg, group))}
    return [(pid, _minimized(v)) for pid, v in verdicts.items()]


def _proposition_worker(args):
    cfg, rule, which, verdicts = args
    measures = measure_pool(cfg)
    if which == 'ContinuityImplication':
        return continuity_probe(rule, measures)
    fixtures = singleton_fixtures(measures)
    try:
        return check_proposition(which, rule, fixtures, verdicts)
    except HypothesisNotMet as e:
        verdict = check_proposition(which, rule, fixtures)
        note = 'hypotheses not met: %s' % (e, )
        if isinstance(verdict, Pass):
            return verdict._replace(notes=tuple(verdict.notes) + (note, ))
        elif isinstance(verdict, Inconclusive):
            return verdict
        return verdict._replace(label=note)


def _map(func, args, nprocs):
    if nprocs > 1 and len(args) > 1:
        logger.info('Starting %i processes for %i jobs', nprocs, len(args))
        pool = mp.Pool(min(nprocs, len(args)))
        try:
            res = pool.map_async(func, args)
            ret = res.get()
            pool.close()
            pool.join()
        finally:
            pool.terminate()
        return ret
    return list(map(func, args))


def emptiness_census(rule, measures):
    """Count the empty updates of single measures with positive evidence"""
    checked = empty = uncertain = 0
    for fixture in singleton_fixtures(measures):
        pr = fixture.x.measures[0]
        checked += 1
        if update_measure(get_rule(rule), pr, fixture.b).is_empty():
            empty += 1
            if pr.prob(fixture.b) < 1:
                uncertain += 1
    return OrderedDict([('fixtures', checked), ('empty', empty),
                        ('empty_with_uncertain_evidence', uncertain)])


def grid_points(grid):
    """The rationals in (0, 1) with the given denominators, ascending"""
    return sorted(set(Fraction(k, d) for d in grid for k in range(1, d)))


def supprob_table(rule, grid):
    """``V(x, y)`` for all grid points ``0 < x < y < 1``"""
    points = grid_points(grid)
    return [OrderedDict([('x', format_rational(x)),
                         ('y', format_rational(y)),
                         ('value', format_value(supprob_xy(rule, x, y)))])
            for y in points for x in points if x < y]


def supprob_is_one(rule, measures):
    """Whether supprob is 1 for every fixture of the pool"""
    for fixture in singleton_fixtures(measures):
        pr, b = fixture.x.measures[0], fixture.b
        for a in pr.space.events():
            if a.issubset(b) and pr.prob(a) > 0 and supprob_eval(
                    rule, pr.space, pr, a, b) != 1:
                return False
    return True


def _survivors(matrix, rules, postulates, p6):
    ret = []
    for rule in rules:
        verdicts = [p6[rule] if pid == 'P6' else matrix[(rule, pid)]
                    for pid in postulates]
        if all(isinstance(v, Pass) for v in verdicts):
            ret.append(rule)
    return ret


@docstrings.dedent
def run_matrix(cfg=None):
    """
    Audit the update rules against all postulates

    Parameters
    ----------
    cfg: AuditConfig
        The configuration. If None, :func:`default_audit_config` is used

    Returns
    -------
    AuditReport
        The report. It only depends on `cfg` (the number of processes
        excluded)"""
    cfg = validate_config(cfg or default_audit_config())
    nprocs = get_nprocs(cfg.nprocs)
    sizes = pool_sizes(cfg)
    logger.info('Auditing %s on %i measures, %i pairs and %i polytopes',
                ', '.join(cfg.rules), sizes['measures'], sizes['pairs'],
                sizes['polytopes'])
    jobs = [(cfg, rule, group) for rule in cfg.rules
            for group in CORE_POSTULATES + ('P6', )]
    results = _map(_matrix_worker, jobs, nprocs)
    verdicts = OrderedDict((rule, {}) for rule in cfg.rules)
    for (cfg_, rule, group), res in zip(jobs, results):
        verdicts[rule].update(res)
    matrix = OrderedDict()
    p6 = OrderedDict()
    for rule in cfg.rules:
        for pid in POSTULATES:
            matrix[(rule, pid)] = verdicts[rule][pid]
            logger.info('%s %s: %s', rule, pid,
                        verdict_name(verdicts[rule][pid]))
        p6[rule] = verdicts[rule]['P6']

    names = PROPOSITIONS + ('ContinuityImplication', )
    jobs = [(cfg, rule, which, verdicts[rule]) for rule in cfg.rules
            for which in names]
    results = _map(_proposition_worker, jobs, nprocs)
    propositions = OrderedDict(
        ((rule, which), verdict)
        for (cfg_, rule, which, v), verdict in zip(jobs, results))

    measures = measure_pool(cfg)
    census = OrderedDict(
        (rule, emptiness_census(rule, measures)) for rule in cfg.rules)
    tables = OrderedDict(
        (rule, supprob_table(rule, cfg.grid_denominators))
        for rule in cfg.rules)
    p1_p4 = _survivors(matrix, cfg.rules, ('P1', 'P2', 'P3', 'P4'), p6)
    characterization = OrderedDict([
        ('P6', OrderedDict((rule, verdict_to_json(v))
                           for rule, v in p6.items())),
        ('survivors_p1_p6', _survivors(matrix, cfg.rules, CHARACTERIZATION,
                                       p6)),
        ('survivors_p1_p7', _survivors(
            matrix, cfg.rules, CHARACTERIZATION + ('P7', ), p6)),
        ('supprob_one', [rule for rule in p1_p4
                         if supprob_is_one(rule, measures)]),
        ('conjecture', OrderedDict([
            ('statement', 'P1-P5 and P6* leave only cond and constrain'),
            ('status', 'open'),
            ('survivors_p1_p5_p6star', _survivors(
                matrix, cfg.rules, CORE_POSTULATES[:5] + ('P6*', ), p6))])),
        ])
    provenance = OrderedDict([('version', credalaudit.__version__),
                              ('pool', sizes)])
    return AuditReport(cfg, matrix, tables, census, propositions,
                       characterization, provenance)


def report_to_json(report):
    """The JSON encoding of an :class:`AuditReport`"""
    def entries(verdicts, key):
        ret = []
        for (rule, name), verdict in verdicts.items():
            d = OrderedDict([('rule', rule), (key, name)])
            d.update(verdict_to_json(verdict))
            ret.append(d)
        return ret

    return OrderedDict([
        ('config', config_to_json(report.config)),
        ('matrix', entries(report.matrix, 'postulate')),
        ('supprob_tables', report.supprob_tables),
        ('emptiness_census', report.emptiness_census),
        ('propositions', entries(report.propositions, 'proposition')),
        ('characterization', report.characterization),
        ('provenance', report.provenance)])


def dumps_report(report):
    """Serialize a report deterministically"""
    if isinstance(report, AuditReport):
        report = report_to_json(report)
    return json.dumps(report, indent=2) + '\n'


def verdict_table(report_json):
    """Map ``rule -> postulate -> verdict`` of a JSON report"""
    ret = OrderedDict()
    for entry in report_json.get('matrix', []):
        ret.setdefault(entry['rule'], OrderedDict())[
            entry['postulate']] = entry['verdict']
    return ret


def compare_with_expected(report_json, expected):
    """
    Compare the verdicts of a report with the expected verdicts

    Parameters
    ----------
    report_json: dict
        The JSON encoding of a report
    expected: dict
        Mapping from rule to a mapping from postulate to ``'pass'`` or
        ``'fail'``. Rules that have not been audited are ignored

    Returns
    -------
    list of str
        One message per mismatch"""
    actual = verdict_table(report_json)
    ret = []
    for rule, postulates in expected.items():
        if rule not in actual:
            continue
        for pid, verdict in postulates.items():
            found = actual[rule].get(pid)
            if found != verdict:
                ret.append('%s %s: expected %s, found %s' % (
                    rule, pid, verdict, found))
    return ret
