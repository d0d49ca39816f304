import json
import math

import pytest

from beds.cli import main
from beds.core import scenario_to_json
from beds.scenarios import (
    dissipation_only,
    drifting_tracking,
    static_crystallizing,
)


@pytest.fixture
def scenario_file(tmp_path):
    def write(builder, name="scenario.json"):
        path = tmp_path / name
        path.write_text(scenario_to_json(builder()))
        return str(path)

    return write


# --- predict ------------------------------------------------------------------------


def test_predict_outputs_closed_forms(capsys):
    code = main(
        ["predict", "--gamma", "1", "--tau-star", "100", "--tau-d", "1", "--kbt", "1"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["p_min_exact"] == pytest.approx(0.497517, rel=1e-5)
    assert payload["p_min_linear"] == 0.5
    assert payload["lambda_required"] == pytest.approx(100.0)
    assert "tau_d_opt" not in payload


def test_predict_required_rate_example(capsys):
    code = main(["predict", "--gamma", "0.1", "--tau-star", "100", "--tau-d", "10"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lambda_required"] == pytest.approx(1.0, rel=1e-12)


def test_predict_with_rate_budget(capsys):
    code = main(
        ["predict", "--gamma", "0.1", "--tau-star", "100", "--tau-d", "10", "--lambda-max", "10"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["tau_d_opt"] == pytest.approx(1.0, rel=1e-12)


def test_predict_rejects_non_positive_flag(capsys):
    code = main(["predict", "--gamma", "0", "--tau-star", "100", "--tau-d", "1"])
    assert code == 2
    assert "--gamma" in capsys.readouterr().err


def test_unparseable_flags_exit_2(capsys):
    assert main(["predict", "--gamma", "one", "--tau-star", "1", "--tau-d", "1"]) == 2


# --- simulate -----------------------------------------------------------------------


def test_simulate_writes_outputs(tmp_path, scenario_file, capsys):
    out = tmp_path / "out"
    code = main(
        ["simulate", "--scenario-path", scenario_file(dissipation_only), "--output-dir", str(out)]
    )
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed["outcome"]["crystallized"] is False
    trace_lines = (out / "trace.csv").read_text().strip().split("\n")
    final_precision = float(trace_lines[-1].split(",")[2])
    assert final_precision == pytest.approx(math.exp(-1.0), rel=1e-12)
    summary = json.loads((out / "summary.json").read_text())
    assert summary == printed
    assert (out / "ledger.csv").read_text().startswith("time,energy,")


def test_simulate_crystallizing_summary(tmp_path, scenario_file):
    out = tmp_path / "out"
    code = main(
        ["simulate", "--scenario-path", scenario_file(static_crystallizing), "--output-dir", str(out)]
    )
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["outcome"]["crystallized"] is True
    assert summary["outcome"]["accurate"] is True


def test_simulate_missing_file_exits_1(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    code = main(["simulate", "--scenario-path", missing, "--output-dir", str(tmp_path / "o")])
    assert code == 1
    assert missing in capsys.readouterr().err


def test_simulate_invalid_config_exits_2_with_violation_list(tmp_path, scenario_file, capsys):
    code = main(
        [
            "simulate",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(tmp_path / "o"),
            "--override", "beds.gamma=0",
        ]
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "beds.gamma" in err


def test_simulate_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["simulate", "--scenario-path", str(bad), "--output-dir", str(tmp_path / "o")])
    assert code == 2


def test_simulate_override_changes_result(tmp_path, scenario_file):
    path = scenario_file(dissipation_only)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    main(["simulate", "--scenario-path", path, "--output-dir", str(out_a)])
    main(
        [
            "simulate",
            "--scenario-path", path,
            "--output-dir", str(out_b),
            "--override", "beds.gamma=0.2",
        ]
    )
    final = lambda p: float((p / "trace.csv").read_text().strip().split("\n")[-1].split(",")[2])
    assert final(out_a) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert final(out_b) == pytest.approx(math.exp(-2.0), rel=1e-12)


def test_simulate_outputs_are_byte_reproducible(tmp_path, scenario_file):
    path = scenario_file(static_crystallizing)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "--scenario-path", path, "--output-dir", str(out_a)]) == 0
    assert main(["simulate", "--scenario-path", path, "--output-dir", str(out_b)]) == 0
    for name in ("trace.csv", "summary.json", "ledger.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_beds_seed_env_overrides_scenario_seed(tmp_path, scenario_file, monkeypatch):
    path = scenario_file(static_crystallizing)
    out_a, out_b, out_c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    main(["simulate", "--scenario-path", path, "--output-dir", str(out_a)])
    monkeypatch.setenv("BEDS_SEED", "424242")
    main(["simulate", "--scenario-path", path, "--output-dir", str(out_b)])
    main(["simulate", "--scenario-path", path, "--output-dir", str(out_c)])
    assert (out_b / "trace.csv").read_bytes() == (out_c / "trace.csv").read_bytes()
    assert (out_a / "trace.csv").read_bytes() != (out_b / "trace.csv").read_bytes()


def test_beds_seed_must_be_integer(tmp_path, scenario_file, monkeypatch, capsys):
    monkeypatch.setenv("BEDS_SEED", "abc")
    code = main(
        [
            "simulate",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(tmp_path / "o"),
        ]
    )
    assert code == 2


# --- classify -----------------------------------------------------------------------


def test_classify_drifting_scenario(tmp_path, scenario_file, capsys):
    out = tmp_path / "out"
    code = main(
        ["classify", "--scenario-path", scenario_file(drifting_tracking), "--output-dir", str(out)]
    )
    assert code == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["maintainable"] is True
    assert verdict["crystallizable"] is False
    assert "final_kl" in verdict["evidence"]


def test_classify_exits_zero_on_all_false_verdict(tmp_path, scenario_file):
    out = tmp_path / "out"
    code = main(
        [
            "classify",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(out),
            "--override", "problem.delta=0.001",
            "--override", "problem.target.target_variance=0.01",
        ]
    )
    assert code == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["attainable"] is False
    assert verdict["maintainable"] is False
    assert verdict["crystallizable"] is False


# --- sweep --------------------------------------------------------------------------


def test_sweep_writes_csv(tmp_path, scenario_file):
    out = tmp_path / "out"
    code = main(
        [
            "sweep",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(out),
            "--grid", "beds.gamma=0.1,0.2",
            "--replicates", "5",
        ]
    )
    assert code == 0
    lines = (out / "sweep.csv").read_text().strip().split("\n")
    assert lines[0].startswith("beds.gamma,replicate,seed,")
    assert len(lines) == 1 + 10


def test_sweep_unknown_path_exits_2(tmp_path, scenario_file, capsys):
    code = main(
        [
            "sweep",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(tmp_path / "o"),
            "--grid", "beds.nope=1,2",
        ]
    )
    assert code == 2
    assert "beds.nope" in capsys.readouterr().err


def test_sweep_bad_grid_value_exits_2(tmp_path, scenario_file):
    code = main(
        [
            "sweep",
            "--scenario-path", scenario_file(dissipation_only),
            "--output-dir", str(tmp_path / "o"),
            "--grid", "beds.gamma=a,b",
        ]
    )
    assert code == 2


# --- verify -------------------------------------------------------------------------


def test_verify_cli_passes_on_this_build(tmp_path, capsys):
    out = tmp_path / "verify"
    code = main(["verify", "--output-dir", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads((out / "verify_report.json").read_text())
    assert report["all_passed"] is True
    names = [check["name"] for check in report["checks"]]
    assert "steady_state_precision_balance" in names
    assert "tracking_rate_sweep" in names
    balance = next(c for c in report["checks"] if c["name"] == "steady_state_precision_balance")
    assert "per_seed_mean_precision" in balance["measured"]
    assert balance["measured"]["per_seed_tolerance"] == 0.05
    sweep_lines = (out / "sweep.csv").read_text().strip().split("\n")
    assert len(sweep_lines) == 1 + 200  # 4 velocities x 5 rates x 10 replicates
    assert captured.out.count("PASS") == len(names)
