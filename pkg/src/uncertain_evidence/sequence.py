"""Weights of evidence for sequences of observations.

Observations in a sequence are taken to be independent given the
hypothesis, so the weight of a sequence is the Dempster combination of the
per-observation weights. With several candidate likelihood mappings there
are two ways to read "the same hypothesis holds throughout": one mapping
for the whole sequence (:attr:`CombinationMode.FIXED`), or a possibly
different mapping at every step (:attr:`CombinationMode.PER_OBSERVATION`).
"""

from __future__ import annotations

import enum
import itertools
from functools import reduce
from typing import Sequence

from .errors import InvalidSpace, TotalConflict, UnknownObservation
from .evidence import EvidenceSpace, weight_of_evidence
from .generalized import GeneralizedEvidenceSpace, TaggedDistSet, WeightSet
from .prob import Dist, dempster_combine

__all__ = ["CombinationMode", "generalized_sequence_weights", "sequence_weight"]


class CombinationMode(str, enum.Enum):
    FIXED = "fixed"
    PER_OBSERVATION = "per-observation"


def _check_sequence(seq: Sequence[str], observations) -> tuple[str, ...]:
    seq = tuple(seq)
    if not seq:
        raise InvalidSpace("an observation sequence must have at least one item")
    for ob in seq:
        if ob not in observations:
            raise UnknownObservation(f"unknown observation {ob!r}; expected one of {list(observations)}")
    return seq


def _fold(weights: Sequence[Dist]) -> Dist:
    return reduce(dempster_combine, weights)


def sequence_weight(space: EvidenceSpace, seq: Sequence[str]) -> Dist:
    """Left fold of Dempster's rule over the weights of the individual observations."""
    seq = _check_sequence(seq, space.observations)
    try:
        return _fold([weight_of_evidence(space, ob) for ob in seq])
    except TotalConflict as exc:
        raise TotalConflict(f"sequence {', '.join(seq)} is impossible under every hypothesis") from exc


def generalized_sequence_weights(space: GeneralizedEvidenceSpace, seq: Sequence[str],
                                 mode: CombinationMode | str, skip_conflicts: bool = False) -> WeightSet:
    """Set of sequence weights, tagged by the tuple of mapping indices used at each step.

    ``FIXED`` uses tags ``(i, i, ..., i)``; ``PER_OBSERVATION`` enumerates all
    ``len(mappings) ** len(seq)`` index tuples.
    """
    mode = CombinationMode(mode)
    seq = _check_sequence(seq, space.observations)
    per_ob = {ob: [weight_of_evidence(e, ob) for e in space.spaces()] for ob in set(seq)}
    n = len(space.mappings)
    if mode is CombinationMode.FIXED:
        paths = [(i,) * len(seq) for i in range(n)]
    else:
        paths = itertools.product(range(n), repeat=len(seq))

    members, conflicts = [], []
    for path in paths:
        try:
            members.append((path, _fold([per_ob[ob][i] for ob, i in zip(seq, path)])))
        except TotalConflict:
            conflicts.append(path)
    if conflicts and (not skip_conflicts or not members):
        raise TotalConflict(
            f"sequence {', '.join(seq)} is impossible along mapping path(s) "
            + "; ".join(",".join(map(str, p)) for p in conflicts),
            conflicts,
        )
    return TaggedDistSet(tuple(members), tuple(conflicts))
