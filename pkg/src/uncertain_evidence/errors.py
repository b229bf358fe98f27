"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`EvidenceError`, so callers (and the CLI) can separate bad input
from genuine bugs.
"""


class EvidenceError(Exception):
    """Base class for all domain errors."""


class InvalidDistribution(EvidenceError, ValueError):
    pass


class NonNormalized(InvalidDistribution):
    pass


class NegativeMass(InvalidDistribution):
    pass


class DuplicateLabel(InvalidDistribution):
    pass


class SupportMismatch(EvidenceError, ValueError):
    pass


class TotalConflict(EvidenceError, ArithmeticError):
    """Dempster combination with a zero normalizer.

    ``tags`` lists the offending mapping indices / index paths / extension
    vertices when the conflict arises inside a set-valued computation.
    """

    def __init__(self, message, tags=()):
        super().__init__(message)
        self.tags = tuple(tags)


class UnknownObservation(EvidenceError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownHypothesis(EvidenceError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ImpossibleObservation(EvidenceError, ValueError):
    """Some observation has zero likelihood under every hypothesis."""


class InvalidSpace(EvidenceError, ValueError):
    pass


class ZeroProbabilityObservation(EvidenceError, ZeroDivisionError):
    pass


class ZeroDenominator(EvidenceError, ZeroDivisionError):
    pass


class CorrelatedSpace(EvidenceError, ValueError):
    """An operation that needs an uncorrelated set of likelihood mappings got a correlated one."""
