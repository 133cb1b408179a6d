import json
import subprocess
import sys

import pytest

from moorepi.cli import main
from moorepi.facts import bundled_path
from moorepi.pipeline import Report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute(capsys):
    assert run(capsys, "compute", "-n", "4", "-r", "1", "-i", "8")[:2] == (0, "(2)^3\n")
    assert run(capsys, "compute", "-n", "9", "-r", "3", "-i", "15")[:2] == (0, "2 + 4 + 16\n")


def test_compute_not_curated(capsys):
    code, _, err = run(capsys, "compute", "-n", "4", "-r", "1", "-i", "99")
    assert code == 2 and "NotCurated" in err


def test_compute_trace_and_json(capsys):
    code, out, _ = run(capsys, "compute", "-n", "5", "-r", "2", "-i", "14", "--trace")
    assert code == 0 and out.splitlines()[-1] == "(2)^7 + (4)^3" and len(out.splitlines()) > 3
    code, out, _ = run(capsys, "compute", "-n", "5", "-r", "2", "-i", "14", "--json")
    doc = json.loads(out)
    assert doc["computed"] == "(2)^7 + (4)^3" and doc["status"] == "PASS"


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--r-set", "1")
    assert code == 0
    assert all(" r=1 " in line for line in out.splitlines()[:-1])
    assert "FAIL 0" in out.splitlines()[-1]


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--r-set", "2", "--json", "--target", "P4.pi8")
    doc = json.loads(out)
    assert code == 0 and Report.from_json(doc).to_json() == doc
    assert doc["entries"][0]["status"] == "PASS"


def test_verify_broken_facts(capsys, tmp_path):
    raw = json.loads(bundled_path().read_text(encoding="utf-8"))
    for rec in raw["facts"]:
        if rec["id"] == "composition.eta-3-eta-4-eta-5":
            rec["order"] = 1024
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(raw), encoding="utf-8")
    code, _, err = run(capsys, "verify", "--facts", str(p))
    assert code == 2 and "ValidationError" in err
    p.write_text("{}", encoding="utf-8")
    assert run(capsys, "verify", "--facts", str(p))[0] == 2


def test_verify_fail_exit_code(capsys, tmp_path):
    raw = json.loads(bundled_path().read_text(encoding="utf-8"))
    for entry in raw["expected_tables"]:
        if entry["id"] == "P4.pi8":
            entry["cases"] = [{"value": "(2)^5"}]
    p = tmp_path / "wrong_table.json"
    p.write_text(json.dumps(raw), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--facts", str(p), "--r-set", "1", "--target", "P4.pi8")
    assert code == 3 and out.startswith("FAIL")


def test_env_var(capsys, tmp_path, monkeypatch):
    p = tmp_path / "empty.json"
    p.write_text("", encoding="utf-8")
    monkeypatch.setenv("MOOREPI_FACTS", str(p))
    code, _, err = run(capsys, "compute", "-n", "4", "-r", "1", "-i", "8")
    assert code == 2 and "ParseError" in err


def test_facts_validate(capsys):
    code, out, _ = run(capsys, "facts-validate", str(bundled_path()))
    assert code == 0 and out.startswith("0 findings")


def test_snf(capsys, tmp_path):
    code, out, _ = run(capsys, "snf", "[[2,4],[6,8]]")
    assert code == 0 and out.splitlines()[0] == "diag(2, 4)"
    p = tmp_path / "m.txt"
    p.write_text("2 4\n6 8\n", encoding="utf-8")
    code, out, _ = run(capsys, "snf", str(p), "--json")
    assert code == 0 and json.loads(out)["diag"] == [2, 4]
    assert run(capsys, "snf", "[[1,2],[3]]")[0] == 2
    assert run(capsys, "snf", str(tmp_path / "absent"))[0] == 2


def test_ext(capsys):
    assert run(capsys, "ext", "--sub", "2", "--quot", "2")[:2] == (0, "2+2, 4\n")
    assert run(capsys, "ext", "--sub", "2", "--quot", "4")[:2] == (0, "2+4, 8\n")
    assert run(capsys, "ext", "--sub", "3", "--quot", "2")[0] == 2


def test_console_module():
    proc = subprocess.run([sys.executable, "-m", "moorepi", "ext", "--sub", "2", "--quot", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2+2, 4"


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["compute", "-n", "four"])
    assert exc.value.code == 2
