import json

import pytest

from bncover import (
    Report,
    QueryReport,
    parse_model,
    replay,
    report_from_json,
    report_to_json,
    run_from_json,
    run_queries,
    run_to_json,
)
from bncover.cli import main
from bncover.order import ResourceLimits

from conftest import MODELS


def test_run_queries_on_relay(relay_model):
    report = run_queries(relay_model, "relay")
    assert [r.verdict for r in report.results] == ["coverable", "not-coverable"]
    rbn_row = report.results[0]
    assert rbn_row.sweeps is not None and rbn_row.inner_queries is not None
    assert rbn_row.trace is not None


def test_run_queries_reports_exhaustion_distinctly(relay_model):
    report = run_queries(relay_model, "relay", ResourceLimits(max_iters=1))
    verdicts = {r.verdict for r in report.results}
    assert "resource-exhausted" in verdicts
    assert "not-coverable" not in verdicts  # the static query cannot finish in one round


def test_report_round_trips(relay_model):
    report = run_queries(relay_model, "relay", want_witness=True)
    text = report_to_json(report)
    assert report_from_json(text) == report
    assert json.loads(text)["format"] == "bncover-report/1"


def test_report_rejects_unknown_fields(relay_model):
    report = run_queries(relay_model, "relay")
    data = json.loads(report_to_json(report))
    data["surprise"] = 1
    with pytest.raises(ValueError):
        report_from_json(json.dumps(data))
    data = json.loads(report_to_json(report))
    data["results"][0]["surprise"] = 1
    with pytest.raises(ValueError):
        report_from_json(json.dumps(data))


def test_witness_serialization_round_trips(relay_model):
    report = run_queries(relay_model, "relay", want_witness=True)
    run = report.results[0].witness
    assert run is not None
    again = run_from_json(json.loads(json.dumps(run_to_json(run))))
    assert again == run
    assert replay(relay_model.process, again)


def test_cli_verify_exit_codes(tmp_path, capsys):
    assert main(["verify", str(MODELS / "relay.bn")]) == 0
    out = capsys.readouterr().out
    assert "coverable" in out and "not-coverable" in out

    bad = tmp_path / "bad.bn"
    bad.write_text("process finite\ninit s0\nquery cover state=zz semantics=rbn\n")
    assert main(["verify", str(bad)]) == 1

    assert main(["verify", str(MODELS / "relay.bn"), "--max-iters", "1"]) == 2


def test_cli_verify_writes_report(tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", str(MODELS / "lone_receiver.bn"), "--report", str(out)]) == 0
    report = report_from_json(out.read_text())
    assert all(r.verdict == "not-coverable" for r in report.results)


def test_cli_explore_replay_round_trip(tmp_path, capsys):
    witness = tmp_path / "run.json"
    code = main(
        ["explore", str(MODELS / "relay.bn"), "--nodes", "3", "--depth", "9",
         "--witness", str(witness)]
    )
    assert code == 0
    assert witness.exists()
    assert main(["replay", str(MODELS / "relay.bn"), "--witness", str(witness)]) == 0
    out = capsys.readouterr().out
    assert "replays cleanly" in out

    # corrupt one label and the replay must fail
    data = json.loads(witness.read_text())
    data["steps"][-1]["graph"]["labels"][0]["counters"] = [9]
    witness.write_text(json.dumps(data))
    assert main(["replay", str(MODELS / "relay.bn"), "--witness", str(witness)]) == 1


def test_cli_missing_file():
    assert main(["verify", "/nonexistent/never.bn"]) == 1


def test_pushdown_model_verifies():
    assert main(["verify", str(MODELS / "handshake_pushdown.bn")]) == 0
