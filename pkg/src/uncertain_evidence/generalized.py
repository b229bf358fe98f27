"""Generalized evidence spaces: a *set* of candidate likelihood mappings.

Each mapping induces an ordinary evidence space, so an observation yields
a set of weight vectors and, for a fixed prior, a set of posteriors. Upper
and lower weights are the max/min over that finite set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable

from .errors import (
    CorrelatedSpace,
    InvalidSpace,
    TotalConflict,
    UnknownHypothesis,
    UnknownObservation,
    ZeroDenominator,
)
from .evidence import EvidenceSpace, LikelihoodMapping, _check_mapping, weight_of_evidence
from .prob import Dist, dempster_combine

__all__ = [
    "GeneralizedEvidenceSpace",
    "TaggedDistSet",
    "WeightSet",
    "generalized_weights",
    "per_hypothesis_sets",
    "posterior_bounds_formula",
    "posterior_set",
    "upper_lower_weight",
    "upper_lower_weight_product_form",
]


@dataclass(frozen=True)
class GeneralizedEvidenceSpace:
    hypotheses: tuple[str, ...]
    observations: tuple[str, ...]
    mappings: tuple[LikelihoodMapping, ...]

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(sorted(self.hypotheses)))
        object.__setattr__(self, "observations", tuple(sorted(self.observations)))
        object.__setattr__(self, "mappings", tuple(self.mappings))
        if not self.hypotheses:
            raise InvalidSpace("a generalized evidence space needs at least one hypothesis")
        if not self.mappings:
            raise InvalidSpace("a generalized evidence space needs at least one likelihood mapping")
        seen = {}
        for i, mapping in enumerate(self.mappings):
            _check_mapping(mapping, self.hypotheses, self.observations, where=f"mapping {i}: ")
            if mapping in seen:
                raise InvalidSpace(f"mapping {i} duplicates mapping {seen[mapping]}")
            seen[mapping] = i

    @classmethod
    def from_tables(cls, tables: Iterable) -> GeneralizedEvidenceSpace:
        mappings = [LikelihoodMapping.from_table(t) for t in tables]
        if not mappings:
            raise InvalidSpace("no likelihood mappings given")
        observations = mappings[0].functions[0][1].labels
        return cls(mappings[0].hypotheses, observations, tuple(mappings))

    @classmethod
    def from_space(cls, space: EvidenceSpace) -> GeneralizedEvidenceSpace:
        return cls(space.hypotheses, space.observations, (space.likelihood,))

    def spaces(self) -> list[EvidenceSpace]:
        """The ordinary evidence spaces induced by each mapping, in mapping order."""
        return [EvidenceSpace(self.hypotheses, self.observations, m) for m in self.mappings]

    def check_observation(self, ob: str):
        if ob not in self.observations:
            raise UnknownObservation(f"unknown observation {ob!r}; expected one of {list(self.observations)}")

    def check_hypothesis(self, h: str):
        if h not in self.hypotheses:
            raise UnknownHypothesis(f"unknown hypothesis {h!r}; expected one of {list(self.hypotheses)}")

    def check_prior(self, prior: Dist):
        if prior.labels != self.hypotheses:
            raise InvalidSpace(f"prior is over {list(prior.labels)}, expected {list(self.hypotheses)}")


@dataclass(frozen=True)
class TaggedDistSet:
    """Distributions over the hypotheses, each tagged with where it came from.

    A tag is a mapping index for single observations and a tuple of indices
    for observation sequences. ``distinct()`` gives the set view, in which
    equal distributions from different sources collapse. ``conflicts``
    holds the tags whose combination was undefined, when the caller asked
    for those to be skipped rather than raised.
    """

    members: tuple[tuple[Hashable, Dist], ...]
    conflicts: tuple = ()

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def tags(self) -> tuple:
        return tuple(tag for tag, _ in self.members)

    def distinct(self) -> tuple[Dist, ...]:
        return tuple(dict.fromkeys(d for _, d in self.members))

    def as_set(self) -> frozenset[Dist]:
        return frozenset(d for _, d in self.members)

    def values(self, h: str) -> frozenset[Fraction]:
        return frozenset(d[h] for _, d in self.members)

    def lower(self, h: str) -> Fraction:
        return min(d[h] for _, d in self.members)

    def upper(self, h: str) -> Fraction:
        return max(d[h] for _, d in self.members)


WeightSet = TaggedDistSet


def generalized_weights(space: GeneralizedEvidenceSpace, ob: str) -> WeightSet:
    """One weight vector per likelihood mapping, tagged with the mapping's index."""
    return TaggedDistSet(tuple((i, weight_of_evidence(e, ob)) for i, e in enumerate(space.spaces())))


def combine_each(prior: Dist, weights: TaggedDistSet, skip_conflicts: bool = False) -> TaggedDistSet:
    """Dempster-combine ``prior`` with every member, keeping the tags.

    Members in total conflict with the prior raise :class:`TotalConflict`
    (listing all of them), unless ``skip_conflicts`` is set and at least one
    member survives.
    """
    out, conflicts = [], []
    for tag, w in weights:
        try:
            out.append((tag, dempster_combine(prior, w)))
        except TotalConflict:
            conflicts.append(tag)
    if conflicts and (not skip_conflicts or not out):
        raise TotalConflict(
            f"prior is in total conflict with the weights from mapping(s) {', '.join(map(str, conflicts))}",
            conflicts,
        )
    return TaggedDistSet(tuple(out), tuple(conflicts))


def posterior_set(space: GeneralizedEvidenceSpace, prior: Dist, ob: str,
                  skip_conflicts: bool = False) -> TaggedDistSet:
    """Prior combined with each member of the generalized weight, one posterior per mapping."""
    space.check_prior(prior)
    return combine_each(prior, generalized_weights(space, ob), skip_conflicts)


def upper_lower_weight(space: GeneralizedEvidenceSpace, ob: str, h: str) -> tuple[Fraction, Fraction]:
    """(lower, upper) weight of evidence for ``h``; exact min/max over the weight set."""
    space.check_hypothesis(h)
    weights = generalized_weights(space, ob)
    return weights.lower(h), weights.upper(h)


def per_hypothesis_sets(space: GeneralizedEvidenceSpace) -> dict[str, tuple[Dist, ...]]:
    """For each hypothesis, the distinct likelihood functions the mappings assign to it.

    Order is by descending mass vector, so the result is deterministic.
    """
    sets = {}
    for h in space.hypotheses:
        functions = {m[h] for m in space.mappings}
        sets[h] = tuple(sorted(functions, key=lambda d: d.masses, reverse=True))
    return sets


def _require_uncorrelated(space: GeneralizedEvidenceSpace):
    from .refinement import Correlated, factor_uncorrelated

    result = factor_uncorrelated(space)
    if isinstance(result, Correlated):
        raise CorrelatedSpace(f"likelihood mappings are correlated (missing combination {result.describe()})")
    return result


def _ratio(num: Fraction, den: Fraction, what: str) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"{what}: denominator is zero")
    return num / den


def posterior_bounds_formula(space: GeneralizedEvidenceSpace, prior: Dist, ob: str,
                             h: str) -> tuple[Fraction, Fraction]:
    """Closed-form outer bounds on the posterior of ``h`` from upper/lower weights.

    ``upper = W(h)p(h) / (W(h)p(h) + sum_{h' != h} w(h')p(h'))`` with ``W``/``w``
    the upper/lower weights, and dually for ``lower``. Valid for uncorrelated
    spaces only; exact when there are two hypotheses.
    """
    space.check_hypothesis(h)
    space.check_prior(prior)
    _require_uncorrelated(space)
    weights = generalized_weights(space, ob)
    up = {k: weights.upper(k) for k in space.hypotheses}
    lo = {k: weights.lower(k) for k in space.hypotheses}
    others = [k for k in space.hypotheses if k != h]

    top = up[h] * prior[h]
    upper = _ratio(top, top + sum((lo[k] * prior[k] for k in others), Fraction(0)), "upper bound")
    bottom = lo[h] * prior[h]
    lower = _ratio(bottom, bottom + sum((up[k] * prior[k] for k in others), Fraction(0)), "lower bound")
    return lower, upper


def upper_lower_weight_product_form(space: GeneralizedEvidenceSpace, ob: str,
                                    h: str) -> tuple[Fraction, Fraction]:
    """Upper/lower weights from upper/lower likelihoods of each hypothesis.

    The upper weight pairs the largest likelihood of ``ob`` under ``h`` with
    the smallest under every other hypothesis; the lower weight does the
    reverse. Only valid when the mappings factor per hypothesis.
    """
    space.check_hypothesis(h)
    factorization = _require_uncorrelated(space)
    space.check_observation(ob)
    hi = {k: max(d[ob] for d in fs) for k, fs in factorization.per_hypothesis.items()}
    lo = {k: min(d[ob] for d in fs) for k, fs in factorization.per_hypothesis.items()}
    others = [k for k in space.hypotheses if k != h]
    upper = _ratio(hi[h], hi[h] + sum((lo[k] for k in others), Fraction(0)), "upper weight")
    lower = _ratio(lo[h], lo[h] + sum((hi[k] for k in others), Fraction(0)), "lower weight")
    return lower, upper

