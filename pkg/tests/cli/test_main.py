import json

import jsonschema
import pytest
from pydantic import ValidationError

from tiltkit.cli.__main__ import _parser, main
from tiltkit.cli.cli import EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_VERIFIED, run
from tiltkit.cli.report import Report
from tiltkit.cli.scenario import load_scenario
from tiltkit.utils.testing import DATA_DIR


def run_command(*args):
    return main(_parser().parse_args([*args, "-q"]))


def read_report(path):
    text = path.read_text()
    jsonschema.validate(json.loads(text), Report.model_json_schema(by_alias=True))
    return Report.loads(text)


def test_check_of_the_tilting_module(tmp_path):
    path = tmp_path / "report.json"
    code = run_command(
        "check",
        "--algebra",
        str(DATA_DIR / "a2.quiver"),
        "--module",
        str(DATA_DIR / "T.mod"),
        "--degree",
        "1",
        "--report",
        str(path),
    )
    assert code == EXIT_VERIFIED
    report = read_report(path)
    assert report.verdict
    assert report.kind == "tilting-check"
    assert report.result["conditions"] == {"i": True, "ii": True, "iii_m": True}
    assert report.proxies


def test_check_of_a_simple_module(tmp_path):
    path = tmp_path / "report.json"
    code = run_command(
        "check", "--algebra", str(DATA_DIR / "a2.quiver"), "--module", str(DATA_DIR / "S1.mod"), "--report", str(path)
    )
    assert code == EXIT_NEGATIVE
    report = read_report(path)
    assert not report.verdict
    assert report.result["witnesses"]["stage"]["index"] == 0


def test_good_tilting_is_reported(tmp_path):
    path = tmp_path / "report.json"
    assert run_command("check", "--good", "--report", str(path)) == EXIT_VERIFIED
    assert read_report(path).result["good"]["verdict"]


def test_malformed_quiver():
    assert run_command("check", "--algebra", str(DATA_DIR / "broken.quiver")) == EXIT_INPUT_ERROR


def test_missing_file(tmp_path):
    assert run_command("check", "--module", str(tmp_path / "missing.mod")) == EXIT_INPUT_ERROR


def test_invalid_parameter():
    assert run_command("matlis", "--s", "1") == EXIT_INPUT_ERROR


@pytest.mark.parametrize(
    "args",
    [
        ("roundtrip", "--complex", str(DATA_DIR / "P2P1.cx")),
        ("truncate", "--count", "3", "--seed", "2"),
        ("matlis", "--s", "3", "--precision", "3"),
        ("adelic", "--primes", "2,3", "--precision", "2"),
        ("fuzz-monad", "--instances", "5", "proring.kind=discrete", "proring.modulus=6"),
        ("gorenstein", "--algebra", "dual-numbers", "--degree", "0"),
    ],
)
def test_commands(tmp_path, args):
    path = tmp_path / "report.json"
    assert run_command(*args, "--report", str(path)) == EXIT_VERIFIED
    assert read_report(path).verdict


def test_report_round_trip():
    report, _ = run(load_scenario(overrides=["precision=2"], kind="adelic"))
    assert Report.loads(report.dumps()).dumps() == report.dumps()
    document = json.loads(report.dumps())
    assert document["schema"] == 1
    document["schema"] = 2
    with pytest.raises(ValueError):
        Report.loads(json.dumps(document))


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("TILTKIT_SEED", "7")
    assert load_scenario(kind="matlis").seed == 7
    assert load_scenario(overrides=["seed=3"], kind="matlis").seed == 3
    monkeypatch.setenv("TILTKIT_SEED", "seven")
    with pytest.raises(ValueError):
        load_scenario(kind="matlis")


def test_runs_are_deterministic():
    scenario = load_scenario(overrides=["count=3", "seed=5"], kind="truncate")
    first, second = run(scenario)[0], run(scenario)[0]
    assert first.model_dump(exclude={"timing"}) == second.model_dump(exclude={"timing"})


def test_scenario_files(tmp_path):
    path = tmp_path / "scenario.yaml"
    path.write_text("kind: matlis\ns: 6\nprecision: 3\n")
    scenario = load_scenario(path, ["precision=2"])
    assert (scenario.s, scenario.precision) == (6, 2)
    with pytest.raises(ValueError):
        load_scenario(path, kind="adelic")


def test_invalid_scenarios():
    with pytest.raises(ValidationError):
        load_scenario(overrides=["unknown=1"], kind="matlis")
    with pytest.raises(ValidationError):
        load_scenario(overrides=["precision=0"], kind="matlis")
    with pytest.raises(ValidationError):
        load_scenario(overrides=["kind=nothing"])