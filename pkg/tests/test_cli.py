import json

import pytest
from click.testing import CliRunner

from uncertain_evidence.cli import cli, main
from uncertain_evidence.model import fixture_names, model_from_dict


def run(*args):
    result = CliRunner().invoke(cli, list(args))
    return result.exit_code, result.output


def invocations():
    for name in fixture_names():
        yield ["weights", "--model", name]
        yield ["analyze", "--model", name]
        yield ["analyze", "--model", name, "--format", "json"]
        yield ["posterior", "--model", name, "--prior", "uniform", "--skip-conflicts"]
        yield ["weights", "--model", name, "--format", "json", "--decimal", "3"]


@pytest.mark.parametrize("args", list(invocations()), ids=" ".join)
def test_every_fixture_runs_deterministically(args):
    first = run(*args)
    assert first[0] == 0, first[1]
    assert run(*args) == first


def test_fixtures_command():
    code, out = run("fixtures")
    assert code == 0 and out.split() == fixture_names()


def test_weights_table():
    code, out = run("weights", "--model", "alice-bob")
    assert code == 0
    assert "heads       | 2/3 | 1/3" in out


def test_weights_sequence_json():
    code, out = run("weights", "--model", "alice-bob", "--obs", "heads,heads", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["weights"] == {"A": "4/5", "B": "1/5"}


def test_decimal_rendering():
    code, out = run("posterior", "--model", "alice-bob", "--prior", "A=1/100,B=99/100",
                    "--obs", "heads", "--decimal", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["posterior"] == {"A": "0.0198", "B": "0.9802"}


def test_generalized_sequence_modes():
    _, fixed = run("weights", "--model", "alice-two-coins", "--obs", "heads,heads", "--mode", "fixed",
                   "--format", "json")
    _, per = run("weights", "--model", "alice-two-coins", "--obs", "heads,heads", "--mode",
                 "per-observation", "--format", "json")
    fixed_a = {d["A"] for d in json.loads(fixed)["blocks"][0]["distinct"]}
    per_a = {d["A"] for d in json.loads(per)["blocks"][0]["distinct"]}
    assert fixed_a == {"4/5", "9/13"} and per_a == {"4/5", "3/4", "9/13"}


def test_posterior_formula_rows():
    code, out = run("posterior", "--model", "three-hyp", "--obs", "X", "--format", "json")
    assert code == 0
    block = json.loads(out)["blocks"][0]
    assert block["lower"]["D"] == "1/5" and block["upper"]["D"] == "1/2"
    assert block["formula_lower"]["D"] == "1/6" and block["formula_upper"]["D"] == "5/9"


def test_analyze_correlated():
    code, out = run("analyze", "--model", "two-sided-choice-agreed", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "correlated" and data["witness"] == {"A": 1, "B": 2}


def test_analyze_refinement_reparses():
    code, out = run("analyze", "--model", "two-sided-choice", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "uncorrelated"
    model = model_from_dict(data["refinement"])
    assert model.hypotheses == ("(A, 1)", "(A, 2)", "(B, 1)", "(B, 2)")


@pytest.mark.parametrize("args", [
    ["weights", "--model", "no-such"],
    ["weights", "--model", "alice-bob", "--obs", "edge"],
    ["weights", "--model", "alice-bob", "--obs", "heads,,tails"],
    ["weights", "--model", "alice-two-coins", "--obs", "heads,heads"],
    ["posterior", "--model", "alice-bob", "--prior", "A=1/2"],
    ["posterior", "--model", "alice-bob", "--prior", "A=x,B=1"],
    ["posterior", "--model", "alice-bob", "--obs", "heads"],
    ["weights", "--model", "alice-bob", "--mode", "sometimes"],
    ["nonsense"],
])
def test_usage_errors_exit_1(args):
    assert run(*args)[0] == 1


def test_malformed_json_exit_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"hypotheses": [')
    code, out = run("weights", "--model", str(path))
    assert code == 1 and "line 1" in out


def test_total_conflict_exit_2():
    code, out = run("posterior", "--model", "alice-bob", "--prior", "A=1,B=0", "--obs", "tails")
    assert code == 2 and "error" in out


def test_robot_conflicts_need_skip():
    assert run("posterior", "--model", "robot-sensor", "--obs", "r0")[0] in (0, 2)
    assert run("posterior", "--model", "robot-sensor", "--skip-conflicts")[0] == 0


def test_main_entry(capsys):
    with pytest.raises(SystemExit) as info:
        main(["weights", "--model", "alice-bob", "--obs", "heads"])
    assert info.value.code == 0
    assert "2/3" in capsys.readouterr().out
