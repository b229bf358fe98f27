"""Evidence spaces with a single likelihood function per hypothesis.

The weight of evidence of an observation is the vector of likelihoods of
that observation normalized over the hypotheses. Combining a prior with it
by Dempster's rule gives the posterior; :func:`bayes_oracle` computes the
same posterior the long way, from a joint distribution, and exists so the
two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    ImpossibleObservation,
    InvalidDistribution,
    InvalidSpace,
    UnknownHypothesis,
    UnknownObservation,
    ZeroProbabilityObservation,
)
from .prob import Dist, dempster_combine, make_dist, to_rational

__all__ = [
    "EvidenceSpace",
    "JointDistribution",
    "LikelihoodMapping",
    "bayes_oracle",
    "posterior",
    "weight_of_evidence",
]


@dataclass(frozen=True)
class LikelihoodMapping:
    """Assignment of a likelihood function (a distribution on observations) to each hypothesis."""

    functions: tuple[tuple[str, Dist], ...]

    def __post_init__(self):
        names = [h for h, _ in self.functions]
        if names != sorted(set(names)):
            raise ValueError("hypotheses must be unique and sorted; use LikelihoodMapping.of()")

    @classmethod
    def of(cls, functions: Mapping[str, Dist]) -> LikelihoodMapping:
        return cls(tuple(sorted((str(h), d) for h, d in functions.items())))

    @classmethod
    def from_table(cls, table: Mapping[str, Mapping[str, object]]) -> LikelihoodMapping:
        """Build from nested ``{hypothesis: {observation: mass}}`` dictionaries."""
        return cls.of({h: Dist.from_mapping(row) for h, row in table.items()})

    @property
    def hypotheses(self) -> tuple[str, ...]:
        return tuple(h for h, _ in self.functions)

    def __getitem__(self, h: str) -> Dist:
        for name, dist in self.functions:
            if name == h:
                return dist
        raise UnknownHypothesis(f"unknown hypothesis {h!r}")

    def items(self):
        return iter(self.functions)

    def likelihoods(self, ob: str) -> tuple[Fraction, ...]:
        """Likelihood of ``ob`` under each hypothesis, in hypothesis order."""
        return tuple(d[ob] for _, d in self.functions)

    def __repr__(self):
        return "LikelihoodMapping(" + ", ".join(f"{h}={d!r}" for h, d in self.functions) + ")"


def _check_mapping(mapping: LikelihoodMapping, hypotheses, observations, where=""):
    if mapping.hypotheses != hypotheses:
        raise InvalidSpace(
            f"{where}likelihood mapping covers {list(mapping.hypotheses)}, expected {list(hypotheses)}"
        )
    for h, dist in mapping.items():
        if dist.labels != observations:
            raise InvalidSpace(
                f"{where}likelihood of {h!r} is over {list(dist.labels)}, expected {list(observations)}"
            )
    for ob in observations:
        if all(lk == 0 for lk in mapping.likelihoods(ob)):
            raise ImpossibleObservation(f"{where}observation {ob!r} has zero likelihood under every hypothesis")


@dataclass(frozen=True)
class EvidenceSpace:
    """Hypotheses, observations and one likelihood mapping.

    Construction fails with :class:`ImpossibleObservation` unless every
    observation has positive likelihood under some hypothesis.
    """

    hypotheses: tuple[str, ...]
    observations: tuple[str, ...]
    likelihood: LikelihoodMapping

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(sorted(self.hypotheses)))
        object.__setattr__(self, "observations", tuple(sorted(self.observations)))
        if not self.hypotheses:
            raise InvalidSpace("an evidence space needs at least one hypothesis")
        _check_mapping(self.likelihood, self.hypotheses, self.observations)

    @classmethod
    def from_table(cls, table: Mapping[str, Mapping[str, object]]) -> EvidenceSpace:
        mapping = LikelihoodMapping.from_table(table)
        observations = mapping.functions[0][1].labels if mapping.functions else ()
        return cls(mapping.hypotheses, observations, mapping)

    def check_observation(self, ob: str):
        if ob not in self.observations:
            raise UnknownObservation(f"unknown observation {ob!r}; expected one of {list(self.observations)}")

    def check_prior(self, prior: Dist):
        if prior.labels != self.hypotheses:
            raise InvalidSpace(f"prior is over {list(prior.labels)}, expected {list(self.hypotheses)}")


def weight_of_evidence(space: EvidenceSpace, ob: str) -> Dist:
    """Normalized likelihoods of ``ob`` across the hypotheses."""
    space.check_observation(ob)
    likelihoods = space.likelihood.likelihoods(ob)
    total = sum(likelihoods, Fraction(0))
    return Dist(space.hypotheses, tuple(lk / total for lk in likelihoods))


def posterior(space: EvidenceSpace, prior: Dist, ob: str) -> Dist:
    space.check_prior(prior)
    return dempster_combine(prior, weight_of_evidence(space, ob))


@dataclass(frozen=True)
class JointDistribution:
    """A probability on pairs (hypothesis, observation).

    Kept deliberately separate from :class:`EvidenceSpace`: conditioning here
    is plain Bayes and never touches Dempster's rule.
    """

    hypotheses: tuple[str, ...]
    observations: tuple[str, ...]
    mass: Mapping[tuple[str, str], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(sorted(self.hypotheses)))
        object.__setattr__(self, "observations", tuple(sorted(self.observations)))
        cells = {(h, ob) for h in self.hypotheses for ob in self.observations}
        extra = set(self.mass) - cells
        if extra:
            raise InvalidDistribution(f"mass on cells outside H x O: {sorted(extra)}")
        full = {cell: to_rational(self.mass.get(cell, 0)) for cell in sorted(cells)}
        if any(v < 0 for v in full.values()):
            raise InvalidDistribution("negative joint mass")
        if sum(full.values(), Fraction(0)) != 1:
            raise InvalidDistribution("joint masses do not sum to 1")
        object.__setattr__(self, "mass", full)

    @classmethod
    def from_prior_and_likelihoods(cls, prior: Mapping[str, object],
                                   likelihoods: Mapping[str, Mapping[str, object]]) -> JointDistribution:
        """P(h, ob) = prior(h) * likelihood_h(ob)."""
        hypotheses = list(prior)
        observations = sorted({ob for row in likelihoods.values() for ob in row})
        mass = {
            (h, ob): to_rational(prior[h]) * to_rational(likelihoods[h].get(ob, 0))
            for h in hypotheses
            for ob in observations
        }
        return cls(tuple(hypotheses), tuple(observations), mass)

    def hypothesis_marginal(self) -> Dist:
        return make_dist(
            self.hypotheses,
            [sum((self.mass[h, ob] for ob in self.observations), Fraction(0)) for h in self.hypotheses],
        )

    def observation_probability(self, ob: str) -> Fraction:
        return sum((self.mass[h, ob] for h in self.hypotheses), Fraction(0))

    def conditional_likelihood(self, h: str) -> Dist:
        """P(ob | h), defined only when h has positive marginal probability."""
        if h not in self.hypotheses:
            raise UnknownHypothesis(f"unknown hypothesis {h!r}")
        row = [self.mass[h, ob] for ob in self.observations]
        total = sum(row, Fraction(0))
        if total == 0:
            raise ZeroProbabilityObservation(f"hypothesis {h!r} has probability zero")
        return make_dist(self.observations, [m / total for m in row])


def bayes_oracle(joint: JointDistribution, ob: str) -> Dist:
    """P(h | ob) by direct conditioning of the joint distribution."""
    if ob not in joint.observations:
        raise UnknownObservation(f"unknown observation {ob!r}")
    p_ob = joint.observation_probability(ob)
    if p_ob == 0:
        raise ZeroProbabilityObservation(f"observation {ob!r} has probability zero")
    return make_dist(joint.hypotheses, [joint.mass[h, ob] / p_ob for h in joint.hypotheses])

