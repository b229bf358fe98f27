import random
from fractions import Fraction as F

import pytest

from instances import random_space, random_uncorrelated
from uncertain_evidence import (
    CombinationMode,
    EvidenceSpace,
    GeneralizedEvidenceSpace,
    InvalidSpace,
    TotalConflict,
    UnknownObservation,
    generalized_sequence_weights,
    generalized_weights,
    make_dist,
    sequence_weight,
    weight_of_evidence,
)

from test_evidence import ALICE_BOB
from test_generalized import TWO_COINS


def direct_weight(space, seq):
    """Normalize the product of per-observation likelihoods."""
    products = {}
    for h in space.hypotheses:
        p = F(1)
        for ob in seq:
            p *= space.likelihood[h][ob]
        products[h] = p
    total = sum(products.values())
    return make_dist(products, [v / total for v in products.values()])


def test_two_heads():
    assert sequence_weight(ALICE_BOB, ["heads", "heads"]).as_dict() == {"A": F(4, 5), "B": F(1, 5)}


@pytest.mark.parametrize("seq", [["tails"], ["heads", "tails"], ["tails", "heads", "heads"]])
def test_any_tails_rules_out_double_headed(seq):
    assert sequence_weight(ALICE_BOB, seq).as_dict() == {"A": 0, "B": 1}


def test_hundred_heads():
    w = sequence_weight(ALICE_BOB, ["heads"] * 100)
    assert w["A"] == F(2 ** 100, 2 ** 100 + 1)


def test_single_observation_sequence():
    for ob in ALICE_BOB.observations:
        assert sequence_weight(ALICE_BOB, [ob]) == weight_of_evidence(ALICE_BOB, ob)


def test_bad_sequences():
    with pytest.raises(InvalidSpace):
        sequence_weight(ALICE_BOB, [])
    with pytest.raises(UnknownObservation):
        sequence_weight(ALICE_BOB, ["heads", "edge"])


def test_conflicting_sequence():
    space = EvidenceSpace.from_table({"A": {"x": 1, "y": 0}, "B": {"x": 0, "y": 1}})
    with pytest.raises(TotalConflict):
        sequence_weight(space, ["x", "y"])


@pytest.mark.parametrize("seed", range(30))
def test_fold_matches_product_likelihood(seed):
    rng = random.Random(8000 + seed)
    space = random_space(rng)
    seq = [rng.choice(space.observations) for _ in range(rng.randint(1, 5))]
    try:
        expected = direct_weight(space, seq)
    except ZeroDivisionError:
        with pytest.raises(TotalConflict):
            sequence_weight(space, seq)
        return
    assert sequence_weight(space, seq) == expected
    shuffled = seq[:]
    rng.shuffle(shuffled)
    assert sequence_weight(space, shuffled) == expected


def test_two_coins_modes():
    seq = ["heads", "heads"]
    fixed = generalized_sequence_weights(TWO_COINS, seq, CombinationMode.FIXED)
    per = generalized_sequence_weights(TWO_COINS, seq, "per-observation")
    assert fixed.values("A") == {F(4, 5), F(9, 13)}
    assert fixed.tags == ((0, 0), (1, 1))
    assert per.values("A") == {F(4, 5), F(3, 4), F(9, 13)}
    assert len(per) == 4


def test_mode_is_validated():
    with pytest.raises(ValueError):
        generalized_sequence_weights(TWO_COINS, ["heads"], "sometimes")


@pytest.mark.parametrize("seed", range(20))
def test_fixed_inside_per_observation(seed):
    rng = random.Random(9000 + seed)
    space, _ = random_uncorrelated(rng, max_o=3, zero_prob=0.0)
    seq = [rng.choice(space.observations) for _ in range(rng.randint(1, 3))]
    fixed = generalized_sequence_weights(space, seq, CombinationMode.FIXED)
    per = generalized_sequence_weights(space, seq, CombinationMode.PER_OBSERVATION)
    assert fixed.as_set() <= per.as_set()
    for tag, w in fixed:
        assert w == sequence_weight(space.spaces()[tag[0]], seq)
    if len(seq) == 1:
        assert per.as_set() == fixed.as_set() == generalized_weights(space, seq[0]).as_set()


def test_singleton_space_collapses_modes():
    single = GeneralizedEvidenceSpace.from_space(ALICE_BOB)
    seq = ["heads", "heads", "heads"]
    for mode in CombinationMode:
        assert generalized_sequence_weights(single, seq, mode).distinct() == (sequence_weight(ALICE_BOB, seq),)


def test_generalized_conflict_tags():
    space = GeneralizedEvidenceSpace.from_tables([
        {"A": {"x": 1, "y": 0}, "B": {"x": 0, "y": 1}},
        {"A": {"x": "1/2", "y": "1/2"}, "B": {"x": 0, "y": 1}},
    ])
    with pytest.raises(TotalConflict) as info:
        generalized_sequence_weights(space, ["x", "y"], CombinationMode.FIXED)
    assert info.value.tags == ((0, 0),)
    kept = generalized_sequence_weights(space, ["x", "y"], CombinationMode.FIXED, skip_conflicts=True)
    assert kept.tags == ((1, 1),) and kept.conflicts == ((0, 0),)
