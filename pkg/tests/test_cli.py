import json
import subprocess
import sys

import pytest

import quadgal.cli as cli
from quadgal.audit.tables import TableFieldRecord
from quadgal.cli import main
from quadgal.core.polynomial import IntPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


def test_bounds_ok(capsys):
    code, doc, _ = run_json(capsys, "bounds", "--p", "2", "--base", "ramified", "--wild", "--scan-to", "2000")
    assert code == 0
    assert doc["summary"]["excluded_fundamental_discriminants"] == [-4, -8, 8, 12, -20, -24, 24]
    assert doc["results"]["literal"]["provenance"] == "derived"


def test_split_prime_exits_3(capsys):
    code, out, err = run(capsys, "bounds", "--p", "2", "--base", "split")
    assert code == 3 and "unsupported" in err and out == ""
    code, _, _ = run(capsys, "rayclass", "--d", "-7", "--p", "2")
    assert code == 3


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bounds", "--p", "5", "--base", "inert")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "bounds", "--p", "2", "--base", "inert", "--precision", "14")[0] == 2
    assert run(capsys, "tables", "--census-bound", "10")[0] == 2
    assert run(capsys, "curve")[0] == 2
    assert run(capsys, "curve", "--nonexistence")[0] == 2


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0


def test_malformed_curve_json_exits_2(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert run(capsys, "curve", "--file", str(p))[0] == 2
    p.write_text(json.dumps({"a4": [-1, 0]}))
    assert run(capsys, "curve", "--file", str(p))[0] == 2
    assert run(capsys, "curve", "--file", str(tmp_path / "missing.json"))[0] == 2


def test_singular_curve_exits_4(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"d": -1, "a4": [0, 0], "a6": [0, 0]}))
    code, _, err = run(capsys, "curve", "--file", str(p))
    assert code == 4 and "invalid input" in err


def test_non_squarefree_field_exits_4(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"d": 12, "a4": [-1, 0]}))
    assert run(capsys, "curve", "--file", str(p))[0] == 4
    assert run(capsys, "curve", "--nonexistence", "--d", "12")[0] == 4


def test_curve_report(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"d": -1, "a4": [-81, 0]}))
    code, doc, _ = run_json(capsys, "curve", "--file", str(p))
    assert code == 0
    assert doc["summary"]["good_away_from_2"] is True
    assert doc["summary"]["rational_two_torsion_audit"] == "consistent"


def test_nonexistence_flag(capsys):
    code, doc, _ = run_json(capsys, "curve", "--nonexistence", "--d", "-5")
    assert code == 0 and doc["summary"]["conclusion"] == "nonexistence"
    code, doc, _ = run_json(capsys, "curve", "--nonexistence", "--d", "6")
    assert doc["summary"]["conclusion"] == "admissible_curve_exists"


def test_audit_failure_exits_1(capsys, monkeypatch):
    # a record whose polynomial has real roots over an imaginary base
    bad = TableFieldRecord(-1, IntPolynomial.parse("x^8 - 2"), 1, (8, 1, 1))
    monkeypatch.setattr(cli, "table1_records", lambda: [bad])
    code, doc, _ = run_json(capsys, "tables", "--which", "table1")
    assert code == 1
    assert any("signature" in f for f in doc["summary"]["hard_fails"])


def test_tables_exit_0(capsys):
    code, doc, _ = run_json(capsys, "tables", "--which", "p3field")
    assert code == 0 and doc["summary"]["verdicts"] == {"-3": "pass"}


def test_corpus_mode(capsys, tmp_path):
    from quadgal.audit.corpus import dump_csv, table2_corpus

    p = tmp_path / "c.csv"
    p.write_text(dump_csv(table2_corpus()) + "6,0;-1;0;0;0;0;1,d=-1\n6,1;2,\n")
    code, doc, _ = run_json(capsys, "tables", "--corpus", str(p), "--ramification", "unramified", "--census-bound", "300")
    assert code == 0
    assert [c["d"] for c in doc["results"]["candidates"]] == [-46, -62]
    assert doc["summary"]["row_errors"] == 1
    assert run(capsys, "tables", "--corpus", str(tmp_path / "missing.csv"))[0] == 2


def test_precision_from_env_and_config(capsys, tmp_path, monkeypatch):
    args = ("bounds", "--p", "2", "--base", "inert", "--scan-to", "100")
    monkeypatch.setenv("QUADGAL_PRECISION", "40")
    _, doc, _ = run_json(capsys, *args)
    assert doc["config"]["precision"] == 40
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"precision": 45, "format": "json"}))
    _, doc, _ = run_json(capsys, *args, "--config", str(cfg))
    assert doc["config"]["precision"] == 45
    _, doc, _ = run_json(capsys, *args, "--config", str(cfg), "--precision", "50")
    assert doc["config"]["precision"] == 50
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert run(capsys, *args, "--config", str(cfg))[0] == 2
    monkeypatch.setenv("QUADGAL_PRECISION", "lots")
    assert run(capsys, *args)[0] == 2


@pytest.mark.parametrize("fmt", ["tsv", "text"])
def test_other_formats(capsys, fmt):
    code, out, _ = run(capsys, "curve", "--nonexistence", "--d", "-1", "--format", fmt)
    assert code == 0
    if fmt == "tsv":
        assert out.startswith("path\tvalue\n")
        assert "summary.conclusion\tnonexistence" in out
    else:
        assert "conclusion" in out and "nonexistence" in out


def test_output_file_and_timing(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, err = run(capsys, "curve", "--nonexistence", "--d", "2", "--output", str(out), "--timing")
    assert code == 0 and stdout == ""
    assert "took" in err
    assert json.loads(out.read_text())["summary"]["conclusion"] == "nonexistence"


def test_higher_precision_keeps_verdicts(capsys):
    for p, base in ((2, "ramified"), (2, "inert"), (3, "ramified")):
        args = ("bounds", "--p", str(p), "--base", base, "--scan-to", "2000")
        _, lo, _ = run_json(capsys, *args)
        _, hi, _ = run_json(capsys, *args, "--precision", "50")
        assert lo["summary"]["excluded_fundamental_discriminants"] == hi["summary"]["excluded_fundamental_discriminants"]
        assert lo["summary"]["hard_fails"] == hi["summary"]["hard_fails"] == []


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "quadgal", "curve", "--nonexistence", "--d", "-3"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["summary"]["conclusion"] == "nonexistence"
