"""CLI 종료 코드와 출력 파일 테스트"""

import json

import pytest
import yaml

from conftest import currents_text, ndbc_text, pvwatts_text
from main import DEFAULT_SCENARIO, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, main


TOY = {
    "region": "toy",
    "costs": {
        "owt": {"precommissioning": 0, "capital": 10, "om_per_year": 0, "decommissioning": 0},
        "lifetime_years": 1,
    },
    "bess": {"capacity_limit": 0},
    "bounds": {"wec": 0, "tec": 0, "owt": 5, "fpv": 0},
    "profiles": {"inline": {"load": [100, 100], "owt": [60, 60]}},
}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("OHRES_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("OHRES_SCENARIO", raising=False)


@pytest.fixture
def toy_file(tmp_path):
    def _write(config=None, name="toy.yaml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(config or TOY), encoding='utf-8')
        return path
    return _write


def _solve(scenario, out, *extra):
    return main(["solve", "--scenario", str(scenario), "--out", str(out), *extra])


def test_solve_writes_outputs(tmp_path, toy_file):
    out = tmp_path / "out"
    assert _solve(toy_file(), out) == EXIT_OK

    document = json.loads((out / "toy.solution.json").read_text(encoding='utf-8'))
    assert document["n_owt"] == 2
    assert document["objective"] == pytest.approx(20.0)
    assert document["p_curtail"] == pytest.approx([20.0, 20.0])
    assert "nodes" in document["diagnostics"]

    report = (out / "toy.report.txt").read_text(encoding='utf-8')
    assert "OWT" in report
    assert (out / "toy.dispatch.csv").read_text(encoding='utf-8').startswith("t,load,wec,tec,owt,fpv")


def test_json_report(tmp_path, toy_file):
    out = tmp_path / "out"
    assert _solve(toy_file(), out, "--format", "json") == EXIT_OK

    report = json.loads((out / "toy.report.json").read_text(encoding='utf-8'))
    assert report["counts"]["owt"] == 2
    assert report["total_cost"] == pytest.approx(sum(report["breakdown"].values()))
    assert report["validation"]["ok"] is True


def test_solution_documents_are_reproducible(tmp_path, toy_file):
    scenario = toy_file()
    assert _solve(scenario, tmp_path / "a") == EXIT_OK
    assert _solve(scenario, tmp_path / "b") == EXIT_OK

    first = (tmp_path / "a" / "toy.solution.json").read_bytes()
    second = (tmp_path / "b" / "toy.solution.json").read_bytes()
    assert first == second


def test_check_accepts_untampered_solution(tmp_path, toy_file):
    scenario = toy_file()
    _solve(scenario, tmp_path)
    solution = tmp_path / "toy.solution.json"

    assert main(["check", str(solution), "--scenario", str(scenario)]) == EXIT_OK


def test_check_rejects_tampered_solution(tmp_path, toy_file):
    scenario = toy_file()
    _solve(scenario, tmp_path)
    solution = tmp_path / "toy.solution.json"

    document = json.loads(solution.read_text(encoding='utf-8'))
    document["n_owt"] += 1
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(document), encoding='utf-8')
    assert main(["check", str(tampered), "--scenario", str(scenario)]) == EXIT_INVALID

    document["n_owt"] -= 1
    document["objective"] += 1.0
    tampered.write_text(json.dumps(document), encoding='utf-8')
    assert main(["check", str(tampered), "--scenario", str(scenario)]) == EXIT_INVALID


def test_check_malformed_document(tmp_path, toy_file):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding='utf-8')
    assert main(["check", str(broken), "--scenario", str(toy_file())]) == EXIT_CONFIG
    assert main(["check", str(tmp_path / "absent.json"), "--scenario", str(toy_file())]) == EXIT_CONFIG


def test_infeasible_scenario(tmp_path, toy_file):
    config = dict(TOY, profiles={"inline": {"load": [100, 100], "owt": [0, 0]}})
    out = tmp_path / "out"
    assert _solve(toy_file(config), out) == EXIT_INFEASIBLE
    assert not (out / "toy.solution.json").exists()


def test_small_shortfall_reports_infeasible(tmp_path, toy_file):
    config = dict(TOY, bounds={"wec": 0, "tec": 0, "owt": 1, "fpv": 1000000},
                  profiles={"inline": {"load": [100.03, 100.03], "owt": [100, 100]}})
    assert _solve(toy_file(config), tmp_path / "out") == EXIT_INFEASIBLE


def test_oracle_agrees_on_toy(toy_file):
    assert main(["oracle", "--scenario", str(toy_file())]) == EXIT_OK


def test_oracle_over_budget():
    assert main(["oracle", "--scenario", str(DEFAULT_SCENARIO)]) == EXIT_LIMIT


def test_config_errors(tmp_path, toy_file):
    assert main(["solve", "--scenario", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG
    assert main(["solve", "--scenario", str(toy_file({"unknown": 1}))]) == EXIT_CONFIG

    with pytest.raises(SystemExit) as excinfo:
        main(["optimize"])
    assert excinfo.value.code == EXIT_CONFIG


def test_scenario_from_environment(tmp_path, toy_file, monkeypatch):
    monkeypatch.setenv("OHRES_SCENARIO", str(toy_file()))
    monkeypatch.setenv("OHRES_OUTPUT_DIR", str(tmp_path / "env_out"))

    assert main(["solve"]) == EXIT_OK
    assert (tmp_path / "env_out" / "toy.solution.json").exists()


def test_profiles_command(tmp_path, toy_file, write_file):
    write_file("46001h2023.txt", ndbc_text(hours=48))
    write_file("currents.csv", currents_text(hours=48))
    write_file("pvwatts.csv", pvwatts_text(days=2))
    config = {
        "datasets": {"ndbc": "46001h2023.txt", "currents": "currents.csv", "pvwatts": "pvwatts.csv"},
        "profiles": {"inline": {"load": [100.0] * 24}},
    }
    scenario = toy_file(config, name="site.yaml")

    assert main(["profiles", "--scenario", str(scenario), "--out", str(tmp_path / "out")]) == EXIT_OK
    document = json.loads((tmp_path / "out" / "site.profiles.json").read_text(encoding='utf-8'))
    assert set(document) == {"load", "wec", "tec", "owt", "fpv"}
    assert len(document["owt"]["hours"]) == 24


def test_compare_regions(tmp_path, toy_file):
    second = dict(TOY, region="windy", profiles={"inline": {"load": [100, 100], "owt": [100, 100]}})
    table = tmp_path / "compare.txt"
    code = main(["compare", str(toy_file()), str(toy_file(second, name="windy.yaml")), "--out", str(table)])

    assert code == EXIT_OK
    text = table.read_text(encoding='utf-8')
    assert "toy" in text and "windy" in text


@pytest.mark.slow
def test_default_scenario(tmp_path):
    code = _solve(DEFAULT_SCENARIO, tmp_path)

    # 시간 한도에 걸리면 검증된 최선해와 함께 4
    assert code in (EXIT_OK, EXIT_LIMIT)
    solution = tmp_path / "base_case.solution.json"
    assert solution.exists()
    assert main(["check", str(solution), "--scenario", str(DEFAULT_SCENARIO)]) == EXIT_OK
