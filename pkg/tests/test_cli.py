import json
import subprocess
import sys

import pytest

from wpverify.bank import get_case
from wpverify.cli import main
from wpverify.verify import corrupt_rhs


def run(argv, capsys, **kw):
    code = main(argv, **kw)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(["--list"], capsys)
    assert code == 0
    assert "THM1" in out and "CHI3" in out


def test_pass_exit_zero(capsys):
    code, out, _ = run(["--identity", "PHI4", "--order", "20", "--seeds", "1"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("1 passed, 0 failed, 0 skipped")


def test_comma_and_repeat_selection(capsys):
    code, out, _ = run(["--identity", "PSI4,WAC", "--identity", "PSI4", "--order", "10", "--seeds", "1", "-q"],
                       capsys)
    assert code == 0
    assert "2 passed" in out and "(2 identities" in out


@pytest.mark.parametrize("argv", [["--identity", "NOPE"], ["--order", "3"], ["--seeds", "0"],
                                  ["--jobs", "0"], ["--bogus"]])
def test_config_errors_exit_two(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_bad_env_exits_two(monkeypatch, capsys):
    monkeypatch.setenv("WPVERIFY_ORDER", "thirty")
    assert run(["--list"], capsys)[0] == 2


def test_env_order(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("WPVERIFY_ORDER", "12")
    path = tmp_path / "r.ndjson"
    code, _, _ = run(["--identity", "PSI4", "--seeds", "1", "--report", str(path)], capsys)
    assert code == 0
    assert json.loads(path.read_text())["order"] == 12


def test_fault_injection_exit_one(capsys, tmp_path):
    bad = corrupt_rhs(get_case("PSI4"), 5)
    path = tmp_path / "r.ndjson"
    code, out, _ = run(["--order", "20", "--seeds", "2", "--report", str(path)], capsys, cases=[bad])
    assert code == 1
    rows = [json.loads(x) for x in path.read_text().splitlines()]
    assert [r["status"] for r in rows] == ["FAIL", "FAIL"]
    rhs = get_case("PSI4").rhs(None, 20)
    assert rows[0]["firstMismatchExp"] == 5 + rhs.lower
    assert "first mismatch at q^" in out


def test_fail_fast(capsys):
    bad = corrupt_rhs(get_case("PSI4"), 5)
    code, out, _ = run(["--order", "10", "--seeds", "3", "--fail-fast"], capsys, cases=[bad])
    assert code == 1
    assert "0 passed, 1 failed" in out


def test_report_fields(capsys, tmp_path):
    path = tmp_path / "r.ndjson"
    run(["--identity", "COR-RS", "--order", "10", "--seeds", "1", "--report", str(path)], capsys)
    r = json.loads(path.read_text())
    assert r["status"] == "PASS"
    for key in ("firstMismatchExp", "lhsCoeff", "rhsCoeff", "reason", "millis"):
        assert r[key] is None
    assert {"id", "paperEq", "spec", "order", "seed", "pair", "termCounts"} <= set(r)


def test_report_timing(capsys, tmp_path):
    path = tmp_path / "r.ndjson"
    run(["--identity", "PSI4", "--order", "10", "--seeds", "1", "--timing", "--report", str(path)], capsys)
    assert json.loads(path.read_text())["millis"] is not None


def test_unwritable_report_exits_two(capsys, tmp_path):
    code, _, err = run(["--identity", "PSI4", "--order", "10", "--seeds", "1",
                        "--report", str(tmp_path / "missing" / "r.ndjson")], capsys)
    assert code == 2
    assert "cannot write report" in err


def test_reports_deterministic_across_jobs(capsys, tmp_path):
    args = ["--identity", "THM1,COR-RS,PSI4", "--order", "12", "--seeds", "2", "-q"]
    p1, p2, p3 = (tmp_path / f"{i}.ndjson" for i in range(3))
    run(args + ["--report", str(p1)], capsys)
    run(args + ["--report", str(p2)], capsys)
    run(args + ["--jobs", "2", "--report", str(p3)], capsys)
    assert p1.read_bytes() == p2.read_bytes() == p3.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wpverify", "--identity", "PSI4", "--order", "10",
                           "--seeds", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "1 passed" in proc.stdout
