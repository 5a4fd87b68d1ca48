"""Shared infrastructure of the credalaudit package

This module holds the docstring processor, the location of the logging
configuration, the error hierarchy, the registry metaclass for rules and
checks, the codec for exact rationals and the helper that decides on the
number of worker processes."""
import os
import os.path as osp
import abc
import logging
import multiprocessing as mp
from fractions import Fraction
from itertools import filterfalse
import docrep


docstrings = docrep.DocstringProcessor()


logger = logging.getLogger(__name__)


#: Environment variable that caps the number of worker processes of an audit
JOBS_ENV = 'CREDAL_AUDIT_JOBS'

#: Environment variable with the path of an alternative logging configuration
LOG_CFG_ENV = 'CREDALAUDIT_LOG_CFG'

#: The default logging configuration of the command line interface
LOGGING_CONFIG = osp.join(osp.dirname(__file__), 'logging.yaml')


# -----------------------------------------------------------------------------
# ---------------------------------- Errors -----------------------------------
# -----------------------------------------------------------------------------


class CredalAuditError(Exception):
    """Base class for all errors raised by the credalaudit package"""


class ZeroEvidence(CredalAuditError):
    """Conditioning on an event with probability 0"""


class SpaceMismatch(CredalAuditError):
    """Objects that live on different measure spaces were combined"""


class UnsupportedRepresentation(CredalAuditError):
    """An operation is not defined for the representation of a credal set"""


class DimensionTooLarge(CredalAuditError):
    """The brute force vertex enumeration has been asked for too many atoms"""


class MalformedFixture(CredalAuditError):
    """A fixture lacks a component that a postulate check requires"""


class PreconditionViolated(CredalAuditError):
    """The arguments of an operation do not meet its precondition"""


class HypothesisNotMet(CredalAuditError):
    """A rule does not satisfy the hypotheses of a proposition check"""


class AllEvidenceNull(CredalAuditError):
    """Every member of a credal set gives the conditioning event probability 0
    """


class NullPlausibility(CredalAuditError):
    """The plausibility of the conditioning event is 0"""


class InvalidMeasure(CredalAuditError, ValueError):
    """Weights that do not form a probability measure"""


class InputError(CredalAuditError):
    """Invalid input on the command line"""


# -----------------------------------------------------------------------------
# ------------------------------ Miscellaneous --------------------------------
# -----------------------------------------------------------------------------


def unique_everseen(iterable, key=None):
    """List unique elements, preserving order. Remember all elements ever seen.

    Function taken from https://docs.python.org/2/library/itertools.html"""
    # unique_everseen('AAAABBBCCDAABBB') --> A B C D
    # unique_everseen('ABBCcAD', str.lower) --> A B C D
    seen = set()
    seen_add = seen.add
    if key is None:
        for element in filterfalse(seen.__contains__, iterable):
            seen_add(element)
            yield element
    else:
        for element in iterable:
            k = key(element)
            if k not in seen:
                seen_add(k)
                yield element


def append_doc(namedtuple_cls, doc):
    """Append the given `doc` to the docstring of a namedtuple class"""
    namedtuple_cls.__doc__ += '\n' + doc
    return namedtuple_cls


@docstrings.dedent
def to_rational(value):
    """
    Convert a value into an exact rational

    Parameters
    ----------
    value: str, int or fractions.Fraction
        The value to convert. Strings must have the form ``'p/q'`` or ``'p'``.
        Floats are rejected because they are not exact

    Returns
    -------
    fractions.Fraction
        The exact rational

    Raises
    ------
    InputError
        If `value` cannot be interpreted as an exact rational"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError("Floating point value %r is not an exact rational" % (
            value, ))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if '.' in text or 'e' in text.lower():
            raise InputError(
                "Decimal %r is not accepted, use the form 'p/q'" % (value, ))
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError("Could not interpret %r as a rational" % (
                value, ))
    raise InputError("Could not interpret %r as a rational" % (value, ))


def format_rational(value):
    """Format a rational as ``'p/q'``, integers included (``'1/1'``)"""
    value = Fraction(value)
    return '%i/%i' % (value.numerator, value.denominator)


class RegistryMeta(abc.ABCMeta):
    """Meta class that registers every subclass with a :attr:`name`

    The class is appended to the ``_registry`` list of the first base class
    that defines one. A framework starts a new registry by setting
    ``_registry = []`` in its base class"""

    def __new__(cls, name, bases, namespace):
        new_cls = super(RegistryMeta, cls).__new__(
            cls, name, bases, namespace)
        if new_cls.name:
            new_cls._registry.append(new_cls)
        return new_cls


def get_nprocs(nprocs=None):
    """
    Get the number of worker processes for an audit

    Parameters
    ----------
    nprocs: int or 'all'
        The requested number of processes. If None, the value of the
        ``CREDAL_AUDIT_JOBS`` environment variable is used, and 1 if that is
        not set either

    Returns
    -------
    int
        The number of processes, capped by ``CREDAL_AUDIT_JOBS`` and the
        number of cpus"""
    env = os.getenv(JOBS_ENV)
    cap = mp.cpu_count()
    if env:
        try:
            cap = min(cap, max(1, int(env)))
        except ValueError:
            logger.warning('Ignoring invalid %s=%r', JOBS_ENV, env)
    if nprocs is None:
        nprocs = cap if env else 1
    elif nprocs == 'all':
        nprocs = cap
    return max(1, min(int(nprocs), cap))
