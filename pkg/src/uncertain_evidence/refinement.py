"""Refining hypotheses instead of keeping a set of likelihood mappings.

A set of mappings is *uncorrelated* when it is the full product of the
likelihood functions available for each hypothesis. Exactly then can each
hypothesis be split into sub-hypotheses, one per likelihood function, to
get an ordinary evidence space (a refinement) carrying the same
information. Posterior bounds in the refined space are taken over every
prior that pushes forward to the given coarse prior.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidSpace, TotalConflict, UnknownHypothesis
from .evidence import EvidenceSpace, LikelihoodMapping, posterior
from .generalized import GeneralizedEvidenceSpace, per_hypothesis_sets
from .prob import Dist, make_dist

__all__ = [
    "Correlated",
    "Factorization",
    "Refinement",
    "build_refinement",
    "extension_posterior_bounds",
    "extension_vertices",
    "factor_uncorrelated",
    "is_extension",
    "is_refinement_of",
    "refined_label",
    "refined_posterior_mass",
]


@dataclass(frozen=True)
class Factorization:
    """The mappings of an uncorrelated space, as a product of per-hypothesis sets."""

    hypotheses: tuple[str, ...]
    observations: tuple[str, ...]
    per_hypothesis: Mapping[str, tuple[Dist, ...]] = field(hash=False)

    def size(self) -> int:
        n = 1
        for functions in self.per_hypothesis.values():
            n *= len(functions)
        return n

    def combinations(self):
        """Every mapping of the product, as (1-based indices, mapping), in lexicographic index order."""
        ranges = [range(len(self.per_hypothesis[h])) for h in self.hypotheses]
        for idx in itertools.product(*ranges):
            mapping = LikelihoodMapping.of(
                {h: self.per_hypothesis[h][i] for h, i in zip(self.hypotheses, idx)}
            )
            yield {h: i + 1 for h, i in zip(self.hypotheses, idx)}, mapping


@dataclass(frozen=True)
class Correlated:
    """Outcome of :func:`factor_uncorrelated` for a correlated space.

    ``witness`` is a combination of per-hypothesis likelihood functions that
    is missing from the space; ``witness_indices`` gives its position in each
    per-hypothesis set (1-based).
    """

    witness: LikelihoodMapping
    witness_indices: Mapping[str, int] = field(hash=False)
    per_hypothesis: Mapping[str, tuple[Dist, ...]] = field(hash=False)

    def describe(self) -> str:
        return "(" + ", ".join(f"{h}: {i}" for h, i in self.witness_indices.items()) + ")"


def factor_uncorrelated(space: GeneralizedEvidenceSpace) -> Factorization | Correlated:
    sets = per_hypothesis_sets(space)
    factorization = Factorization(space.hypotheses, space.observations, sets)
    present = set(space.mappings)
    # space.mappings is always a subset of the product, so one missing
    # combination is enough to decide.
    for indices, mapping in factorization.combinations():
        if mapping not in present:
            return Correlated(mapping, indices, sets)
    return factorization


def refined_label(h: str, k: int) -> str:
    return f"({h}, {k})"


@dataclass(frozen=True)
class Refinement:
    """An evidence space over finer hypotheses plus the map back to the coarse ones."""

    refined: EvidenceSpace
    surjection: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        surjection = dict(sorted(self.surjection.items()))
        if set(surjection) != set(self.refined.hypotheses):
            raise InvalidSpace("the coarsening map must be defined on exactly the refined hypotheses")
        object.__setattr__(self, "surjection", surjection)
        for h in self.coarse_hypotheses:
            fiber = self.fiber(h)
            functions = [self.refined.likelihood[k] for k in fiber]
            if len(set(functions)) != len(functions):
                raise InvalidSpace(f"hypotheses refining {h!r} must have distinct likelihood functions")

    @property
    def coarse_hypotheses(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.surjection.values())))

    def fiber(self, h: str) -> tuple[str, ...]:
        fiber = tuple(k for k, v in self.surjection.items() if v == h)
        if not fiber:
            raise UnknownHypothesis(f"unknown coarse hypothesis {h!r}")
        return fiber

    def fiber_functions(self) -> dict[str, tuple[Dist, ...]]:
        return {h: tuple(self.refined.likelihood[k] for k in self.fiber(h)) for h in self.coarse_hypotheses}

    def induced_mappings(self) -> tuple[LikelihoodMapping, ...]:
        """Every coarse mapping obtained by picking one refined hypothesis per fiber."""
        fibers = self.fiber_functions()
        names = self.coarse_hypotheses
        return tuple(
            LikelihoodMapping.of(dict(zip(names, choice)))
            for choice in itertools.product(*(fibers[h] for h in names))
        )

    def to_generalized(self) -> GeneralizedEvidenceSpace:
        """The coarse generalized space this refines.

        Can fail with ``ImpossibleObservation`` when some combination of
        likelihood functions leaves an observation impossible.
        """
        return GeneralizedEvidenceSpace(
            self.coarse_hypotheses, self.refined.observations, self.induced_mappings()
        )


def build_refinement(factorization: Factorization) -> Refinement:
    likelihood, surjection = {}, {}
    for h in factorization.hypotheses:
        for k, function in enumerate(factorization.per_hypothesis[h], start=1):
            label = refined_label(h, k)
            likelihood[label] = function
            surjection[label] = h
    refined = EvidenceSpace(
        tuple(likelihood), factorization.observations, LikelihoodMapping.of(likelihood)
    )
    return Refinement(refined, surjection)


def is_refinement_of(refinement: Refinement, space: GeneralizedEvidenceSpace) -> bool:
    """Check the refinement definition directly: onto, same observations, same mapping set."""
    return (
        refinement.coarse_hypotheses == space.hypotheses
        and refinement.refined.observations == space.observations
        and set(refinement.induced_mappings()) == set(space.mappings)
    )


def is_extension(refinement: Refinement, refined_prior: Dist, prior: Dist) -> bool:
    return all(
        refined_prior.mass_of(refinement.fiber(h)) == prior[h] for h in refinement.coarse_hypotheses
    )


def extension_vertices(refinement: Refinement, prior: Dist):
    """Yield ``(choice, refined_prior)`` for every extreme point of the extensions of ``prior``.

    An extreme extension puts all of ``prior[h]`` on a single refined
    hypothesis of each fiber; ``choice`` maps each coarse hypothesis to that
    refined hypothesis. Duplicate vertices (from zero-mass hypotheses) are
    yielded once.
    """
    if prior.labels != refinement.coarse_hypotheses:
        raise InvalidSpace(
            f"prior is over {list(prior.labels)}, expected {list(refinement.coarse_hypotheses)}"
        )
    names = refinement.coarse_hypotheses
    refined = refinement.refined.hypotheses
    seen = set()
    for picks in itertools.product(*(refinement.fiber(h) for h in names)):
        masses = dict.fromkeys(refined, Fraction(0))
        for h, k in zip(names, picks):
            masses[k] = prior[h]
        vertex = make_dist(masses, masses.values())
        if vertex in seen:
            continue
        seen.add(vertex)
        yield dict(zip(names, picks)), vertex


def refined_posterior_mass(refinement: Refinement, refined_prior: Dist, ob: str, h: str) -> Fraction:
    """Posterior mass on the fiber of coarse hypothesis ``h`` in the refined space."""
    return posterior(refinement.refined, refined_prior, ob).mass_of(refinement.fiber(h))


def extension_posterior_bounds(refinement: Refinement, prior: Dist, ob: str, h: str,
                               skip_conflicts: bool = False) -> tuple[Fraction, Fraction]:
    """Exact (lower, upper) posterior of ``h`` over all refined priors extending ``prior``.

    The refined posterior of a fiber is a ratio of two functions linear in
    the refined prior, and such a ratio attains its extrema over a polytope
    at vertices, so enumerating the extreme extensions is exact.

    A vertex at which ``ob`` is impossible raises :class:`TotalConflict`.
    With ``skip_conflicts`` such vertices are ignored instead; this is still
    exact, since they add zero to both numerator and denominator of every
    point they take part in.
    """
    refinement.refined.check_observation(ob)
    fiber = refinement.fiber(h)
    values, conflicts = [], []
    for choice, vertex in extension_vertices(refinement, prior):
        try:
            values.append(posterior(refinement.refined, vertex, ob).mass_of(fiber))
        except TotalConflict:
            conflicts.append(tuple(choice.values()))
    if conflicts and (not skip_conflicts or not values):
        raise TotalConflict(
            f"observation {ob!r} is impossible under extension(s) concentrated on "
            + "; ".join(", ".join(c) for c in conflicts),
            conflicts,
        )
    return min(values), max(values)
