import json
import subprocess
import sys
from pathlib import Path

import pytest

from reeselim.cli import main
from reeselim.session import run_session, run_text

ROOT = Path(__file__).resolve().parents[1]
SESSIONS = sorted((ROOT / "sessions").glob("*.session"))
GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("path", SESSIONS, ids=lambda p: p.stem)
def test_shipped_sessions_pass(path):
    report = run_session(path)
    assert report.exit_code == 0, report.text()
    assert report.failed == report.errors == 0


@pytest.mark.parametrize("path", SESSIONS, ids=lambda p: p.stem)
def test_report_matches_golden_file(path):
    assert run_session(path).text() == (GOLDEN / f"{path.stem}.report").read_text()


@pytest.mark.parametrize("path", SESSIONS, ids=lambda p: p.stem)
def test_replay_is_deterministic(path):
    a, b = run_session(path), run_session(path)
    assert a.text() == b.text()
    assert a.dumps_records() == b.dumps_records()


def test_empty_script_is_an_empty_success():
    report = run_text("")
    assert report.text() == "" and report.exit_code == 0


def test_unknown_command_is_a_parse_error_with_line_number():
    report = run_text("ring QQ vars x\n\n# note\nfrobnicate x\n")
    assert report.exit_code == 1
    assert report.lines == ["parse error: line 4: unknown command 'frobnicate'"]


def test_command_errors_are_reported_and_execution_continues():
    text = "ring QQ vars x,y\nrees gen 1 x as G\nord H at (0,0)\nord G at (0,0)\n"
    report = run_text(text)
    assert report.errors == 1
    assert "[3] ERROR ScriptError: unbound name 'H'" in report.lines
    assert report.lines[-1] == "[4] ord G at (0,0) => 1"


def test_missing_argument_is_an_error():
    report = run_text("ring QQ vars x\nrees gen 1 x as G\nord G\n")
    assert report.errors == 1 and "missing `at (point)`" in report.lines[-1]


def test_assertion_operators():
    text = """ring QQ vars x,y
poly 2x+2y as f
assert print f ~= x+y
assert print f == x+y
rees gen 2 x^2 gen 1 y as G
assert print G contains gen 1 x^2
assert singgens G contains x
assert ord G at (0,0) == 1
assert sing? G at (1,0) == false
"""
    report = run_text(text)
    assert (report.passed, report.failed, report.errors) == (5, 1, 0)
    assert any(line.startswith("[4] FAIL") for line in report.lines)


def test_commands_bind_and_print():
    report = run_text("ring GF(3) vars x,y\nrees gen 3 x^3+y^3 as G\ntwist G by 1/3 as H\nprint H\n")
    assert report.lines[-1] == "[4] print H => {(y^3 + x^3, 1)}"


def test_linchange_and_odot():
    text = """ring QQ vars x,y
rees gen 2 x^2+y^3 as A
rees gen 1 y as B
odot A B as C
linchange C matrix [[0,1],[1,0]] as D
assert print D == gen 2 y^2+x^3 gen 1 x
"""
    assert run_text(text).exit_code == 0


def test_records_are_json(tmp_path):
    out = tmp_path / "records.json"
    code = main(["run", str(ROOT / "sessions" / "discriminant.session"), "--records", str(out)])
    assert code == 0
    records = json.loads(out.read_text())
    assert records[-1]["kind"] == "assert" and records[-1]["status"] == "PASS"


def test_cli_exit_status_on_failure(tmp_path, capsys):
    script = tmp_path / "bad.session"
    script.write_text("ring QQ vars x\nrees gen 1 x as G\nassert ord G at (0) == 2\n")
    assert main(["run", str(script)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_probe_grid_flag(tmp_path, capsys):
    script = tmp_path / "grid.session"
    script.write_text("ring QQ vars x,y\nrees gen 2 y^2+x^2*(x-1)^2 as G\nprobe-grid G\n")
    assert main(["run", str(script), "--probe-grid=-1..1"]) == 0
    out = capsys.readouterr().out
    assert "(1, 0)" in out and "(0, 0)" in out


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "reeselim.cli", "run",
                           str(ROOT / "sessions" / "kangaroo.session")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "kangaroo.report").read_text()
