import json

import pytest

from maxclass5.cli import run_command
from maxclass5.fields import bundled_table_path

from conftest import validate_payload


def run_json(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_build_writes_descriptor(tmp_path, capsys):
    out = tmp_path / "g.json"
    code = run_command(["build", "--n", "6", "--z", "1", "--w", "0",
                        "--a", "1", "--samples", "800", "-o", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload == {"p": 5, "n": 6, "w": 0, "z": 1, "a": [1]}
    validate_payload(payload, "descriptor.schema.json")


def test_build_rejects_bad_params(capsys):
    code = run_command(["build", "--n", "3"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert run_command(["build", "--n", "4", "--frobnicate"]) == 1
    assert run_command(["nonsense"]) == 1
    assert run_command(["verify", "prop99"]) == 1
    err = capsys.readouterr().err
    assert "usage" in err


def test_invariants_schema(tmp_path, capsys):
    code, payload = run_json(capsys, ["invariants", "--n", "4", "--w", "1"])
    assert code == 0
    validate_payload(payload, "structure_report.schema.json")
    assert payload["class"] == 3


def test_transfers_schema(capsys):
    code, payload = run_json(capsys, ["transfers", "--n", "5", "--w", "1"])
    assert code == 0
    validate_payload(payload, "transfer_report.schema.json")
    trivials = [s["trivial"] for s in payload["subgroups"]]
    assert trivials[1] is False  # w = 1 forces a nontrivial H_2 transfer


def test_classify_schema(capsys):
    code, payload = run_json(capsys, ["classify", "--n", "6", "--z", "1",
                                      "--a", "1"])
    assert code == 0
    validate_payload(payload, "classify_report.schema.json")
    assert payload["label"] == "G_1^(6)(1,0)"


def test_classify_from_descriptor_file(tmp_path, capsys):
    desc = tmp_path / "d.json"
    desc.write_text(json.dumps({"p": 5, "n": 5, "w": 0, "z": 0, "a": []}))
    code, payload = run_json(capsys, ["classify", "--in", str(desc)])
    assert code == 0
    assert payload["label"] == "G_0^(5)(0,0)"


def test_verify_clean_statement_exits_zero(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = run_command(["verify", "thm22", "--n-range", "4..4",
                        "--samples", "600", "-o", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    validate_payload(payload, "proposition_report.schema.json")
    assert payload["ok"] is True and payload["tuples_tested"] == 25


def test_verify_violations_exit_two(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = run_command(["verify", "prop33", "--n-range", "5..5",
                        "--samples", "600", "-o", str(out)])
    assert code == 2
    payload = json.loads(out.read_text())
    validate_payload(payload, "proposition_report.schema.json")
    assert payload["ok"] is False
    assert len(payload["violations"]) == 4


def test_verify_deterministic_given_seed(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path, workers in ((a, "1"), (b, "2")):
        code = run_command(["verify", "prop31", "--n-range", "4..4",
                            "--samples", "500", "--seed", "7",
                            "--workers", workers, "--per-tuple",
                            "-o", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_predict_cli(capsys):
    code, payload = run_json(capsys, [
        "predict", "--table", str(bundled_table_path()),
        "--scenario", "HL"])
    assert code == 0
    validate_payload(payload, "predict_report.schema.json")
    assert len(payload["results"]) == 10
    flagged = [r for r in payload["results"] if not r["ok"]]
    assert len(flagged) == 1 and flagged[0]["record"]["p"] == 559
    assert flagged[0]["prediction"] is None
    ok_res = [r for r in payload["results"] if r["ok"]]
    assert all(len(r["prediction"]["candidates"]) == 12 for r in ok_res)


def test_predict_missing_s_exit_one(capsys):
    code = run_command(["predict", "--table", str(bundled_table_path()),
                        "--scenario", "Htilde", "--claim-n-ge7"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_export_dot(capsys):
    code = run_command(["export", "--n", "5", "--format", "dot"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.count("-> gamma2") == 6
    assert out.count("H") >= 6 and "chi2" in out


def test_export_json_schema(capsys):
    code, payload = run_json(capsys, ["export", "--n", "4", "--format",
                                      "json"])
    assert code == 0
    validate_payload(payload, "group_export.schema.json")


def test_export_table_row_count(tmp_path):
    out = tmp_path / "table.csv"
    assert run_command(["export", "--n", "4", "--format", "table",
                        "-o", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 626  # header plus 625 element rows
    assert run_command(["export", "--n", "5", "--format", "table"]) == 1
