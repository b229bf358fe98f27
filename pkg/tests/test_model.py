import json
from fractions import Fraction as F

import pytest

from uncertain_evidence import (
    Model,
    ModelError,
    build_refinement,
    factor_uncorrelated,
    load_model,
    loads_model,
)
from uncertain_evidence.model import (
    dump_model,
    fixture_names,
    model_from_dict,
    model_from_refinement,
    model_to_dict,
)

from test_generalized import DELTA_1

BASE = {
    "hypotheses": ["A", "B"],
    "observations": ["heads", "tails"],
    "mappings": [{"A": {"heads": "1", "tails": "0"}, "B": {"heads": "1/2", "tails": "1/2"}}],
}


def variant(**changes):
    data = json.loads(json.dumps(BASE))
    data.update(changes)
    return data


def test_minimal_model():
    model = model_from_dict(BASE)
    assert not model.is_generalized and model.prior is None
    assert model.evidence_space().likelihood["B"]["tails"] == F(1, 2)


@pytest.mark.parametrize("data, fragment", [
    ([], "top level"),
    ({"hypotheses": ["A"]}, "missing field 'observations'"),
    (variant(extra=1), "unknown field"),
    (variant(hypotheses=["A", "A"]), "duplicate"),
    (variant(hypotheses=[]), "hypotheses"),
    (variant(mappings=[]), "mappings"),
    (variant(mappings=[{"A": {"heads": "1", "tails": "0"}}]), "mappings[0]"),
    (variant(mappings=[{"A": {"heads": "1", "tails": "0"}, "B": {"heads": "1/2", "tails": "1/3"}}]),
     "mappings[0].B"),
    (variant(mappings=[{"A": {"heads": 0.5, "tails": "1/2"}, "B": {"heads": "1/2", "tails": "1/2"}}]),
     "mappings[0].A.heads"),
    (variant(mappings=[{"A": {"heads": "x", "tails": "1/2"}, "B": {"heads": "1/2", "tails": "1/2"}}]),
     "mappings[0].A.heads"),
    (variant(mappings=[{"A": {"heads": "1"}, "B": {"heads": "1/2", "tails": "1/2"}}]), "missing entries"),
    (variant(prior={"A": "1/2", "B": "1/3"}), "prior"),
    (variant(prior={"A": "1"}), "prior"),
    (variant(coarsening={"A": "X"}), "coarsening"),
    (variant(mappings=BASE["mappings"] * 1 + [
        {"A": {"heads": "3/4", "tails": "1/4"}, "B": {"heads": "1/2", "tails": "1/2"}}],
        coarsening={"A": "X", "B": "Y"}), "single likelihood mapping"),
    (variant(mappings=[{"A": {"heads": "1", "tails": "0"}, "B": {"heads": "1", "tails": "0"}}]), "tails"),
])
def test_field_diagnostics(data, fragment):
    with pytest.raises(ModelError) as info:
        model_from_dict(data)
    assert fragment in str(info.value)


def test_json_error_location():
    with pytest.raises(ModelError) as info:
        loads_model('{\n  "hypotheses": [\n', "bad.json")
    assert "bad.json: line" in str(info.value)


def test_round_trip_all_fixtures():
    for name in fixture_names():
        model = load_model(name)
        again = loads_model(dump_model(model))
        assert again == model
        assert dump_model(again) == dump_model(model)


def test_fixture_resolution(tmp_path):
    assert "alice-bob" in fixture_names()
    assert load_model("alice-bob.json") == load_model("alice-bob")
    path = tmp_path / "m.json"
    path.write_text(json.dumps(BASE))
    assert isinstance(load_model(path), Model)
    with pytest.raises(ModelError):
        load_model("no-such-model")


def test_coarse_prior():
    data = {
        "hypotheses": ["A1", "A2", "B"],
        "observations": ["heads", "tails"],
        "mappings": [{"A1": {"heads": "1", "tails": "0"}, "A2": {"heads": "3/4", "tails": "1/4"},
                      "B": {"heads": "1/2", "tails": "1/2"}}],
        "prior": {"A": "1/100", "B": "99/100"},
        "coarsening": {"A1": "A", "A2": "A", "B": "B"},
    }
    model = model_from_dict(data)
    assert model.prior.labels == ("A", "B")
    assert model.refinement().coarse_hypotheses == ("A", "B")
    assert model_from_dict(model_to_dict(model)) == model


def test_invalid_coarsening_fiber():
    # two hypotheses with the same likelihood in one fiber
    data = {
        "hypotheses": ["x", "y", "z"],
        "observations": ["heads", "tails"],
        "mappings": [{h: {"heads": "1/2", "tails": "1/2"} for h in "xy"} | {"z": {"heads": "1", "tails": "0"}}],
        "coarsening": {"x": "A", "y": "A", "z": "B"},
    }
    with pytest.raises(ModelError):
        model_from_dict(data)


def test_model_from_refinement():
    refinement = build_refinement(factor_uncorrelated(DELTA_1))
    model = model_from_refinement(refinement)
    assert model.refinement().to_generalized().mappings == refinement.to_generalized().mappings
    assert loads_model(dump_model(model)) == model
