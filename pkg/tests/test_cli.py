import json
import subprocess
import sys

import pytest

from uvtsw.cli import main
from uvtsw.report import FAIL, FINDING, PASS, Report, roundtrip


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_relations_pass(capsys):
    code, out = run(capsys, "relations", "--n", "3")
    assert code == 0
    assert "overall: pass" in out.out
    for rel in ("R1", "R2", "R3", "R4", "R5", "R6"):
        assert f"level 1: {rel}" in out.out


def test_usage_errors(capsys):
    for argv in (["relations", "--n", "1"], ["braid", "--k", "1"], ["nope"], ["decompose", "--cap", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    assert "--n must be at least 2" in capsys.readouterr().err


def test_cap_exceeded_is_usage_error(capsys):
    code, out = run(capsys, "braid", "--n", "4", "--k", "5")
    assert code == 2
    assert "exceeds the size cap" in out.err


def test_json_roundtrip(capsys):
    code, out = run(capsys, "idempotents", "--k", "3", "--mode", "fusion", "--format", "json")
    assert code == 0
    assert roundtrip(out.out) == out.out.rstrip("\n")
    data = json.loads(out.out)
    assert data["command"] == "idempotents" and data["overall"] == PASS
    assert {c["status"] for c in data["checks"]} <= {PASS, FAIL, FINDING}


def test_findings_do_not_fail(capsys):
    code, out = run(capsys, "jm", "--k", "5", "--format", "json")
    data = json.loads(out.out)
    assert code == 0
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert statuses["exponent equals the printed 2(k-1)"] == FINDING


def test_commutant_reports_finding(capsys):
    code, out = run(capsys, "commutant", "--n", "3", "--k", "3")
    assert code == 0
    assert "[FINDING] R_i commutes with every generator image" in out.out


def test_pairing_n3_fails_theta(capsys):
    code, out = run(capsys, "pairing", "--n", "3", "--height", "2")
    assert code == 1
    assert "[FAIL   ] Theta(height <= 2) o f = printed Rtilde" in out.out


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["hecke-action", "--n", "2", "--k", "3", "--seed", "7", "--format", "json", "--out", str(a)])
    main(["hecke-action", "--n", "2", "--k", "3", "--seed", "7", "--format", "json", "--out", str(b)])
    strip = lambda p: [(c["name"], c["status"], c["detail"]) for c in json.loads(p.read_text())["checks"]]
    assert strip(a) == strip(b)


def test_decompose_text(capsys):
    code, out = run(capsys, "decompose", "--n", "2", "--k", "3")
    assert code == 0
    assert '"total": 8' in out.out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "uvtsw", "relations", "--n", "2", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["overall"] == PASS


def test_report_overall():
    rep = Report("x")
    rep.add("a", FINDING)
    assert rep.exit_code == 0
    rep.expect("b", False)
    assert rep.overall == FAIL and rep.exit_code == 1
    with pytest.raises(ValueError):
        rep.add("c", "maybe")
