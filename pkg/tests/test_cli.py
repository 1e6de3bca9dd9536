import io
import json
import subprocess
import sys

import pytest

from szkit.cli import main
from szkit.config import Config


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text else None), text


def test_sz_check_example():
    code, out, _ = run("sz-check", "x^2-x-1")
    assert code == 0 and out["classification"] == "bound-satisfied"
    assert out["float_precision"] == 17


def test_expand_example():
    code, out, _ = run("expand", "--sqrt", "1-4x", "-n", "5", "--assert-integral")
    assert code == 0 and out["coefficients"] == ["1", "-2", "-2", "-4", "-10", "-28"]


def test_expand_assert_integral_fails():
    code, out, _ = run("expand", "--sqrt", "1+x", "-n", "5", "--assert-integral")
    assert code == 1 and out["integral"] is False
    code, out, _ = run("expand", "--pth-root", "3", "1+9x", "-n", "2")
    assert code == 0 and out["coefficients"] == ["1", "3", "-9"]


def test_scan_example():
    code, out, _ = run("scan", "--degree", "3", "--coeff-bound", "1")
    assert code == 0 and out["zero_counterexamples"] and out["counterexamples"] == []


def test_scan_partial_gives_undecided_code_and_token():
    code, out, _ = run("scan", "--degree", "3", "--coeff-bound", "2", "--jobs", "1")
    assert code == 0
    import os

    os.environ["SZKIT_SCAN_BUDGET"] = "90"
    try:
        code, out, _ = run("scan", "--degree", "3", "--coeff-bound", "2")
    finally:
        del os.environ["SZKIT_SCAN_BUDGET"]
    assert code == 3 and out["resume"].startswith("3:2:")
    code, out, _ = run("scan", "--degree", "3", "--coeff-bound", "2", "--resume", out["resume"])
    assert code == 0 and out["complete"]


def test_usage_errors():
    assert run("sz-check", "x^2+")[0] == 2
    msg = run("sz-check", "x^2+")[1]["message"]
    assert "x^2-x-1" in msg and "JSON" in msg
    assert main(["nonsense"]) == 2
    assert main([]) == 2
    assert run("scan", "--degree", "1", "--coeff-bound", "2")[0] == 2
    assert run("smale-check", "x^2")[0] == 2


def test_precondition_failure_exit_one():
    code, out, _ = run("atoral-check", "x^4+x^3+x^2+x+1")
    assert code == 1 and out["error"] == "roots-on-unit-circle"


def test_big_integers_are_strings():
    _, out, _ = run("expand", "--sz", "x^8-20x-20", "-n", "60")
    assert all(isinstance(c, str) for c in out["coefficients"])
    _, out, _ = run("rationality", "x^2-x-1", "-k", "10")
    assert all(isinstance(d, str) for d in out["dets"]) and out["verdict"] == "non-rational"


def test_other_commands():
    assert run("congruence", "x^2-x-1", "--prime", "3")[1]["difference"] == ["-72", "0"]
    assert run("certify", "1-6x+x^2")[1]["u"] == ["-1", "1"]
    assert run("house", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")[1]["unit_circle_roots"] == 8
    assert len(run("roots", "x^2+1")[1]["roots"]) == 2
    cap = run("capacity", "[[1,0],[0,1],[-1,0],[0,-1]]")[1]
    assert cap["dubinin"] == pytest.approx(4 ** -0.25, abs=1e-15)
    assert run("transform", "x^2-x-1", "-m", "4")[1]["transform"] == ["1", "-7", "1"]
    assert run("matveev")[1]["crossover"] == 59
    assert run("smale-check", "x+x^2")[1]["equality"] is True
    assert run("critical-values", "x", "1-x")[1]["critical_values"] == []
    assert run("diagonal", "x+x^2", "-n", "4")[1]["coefficients"] == ["-1", "2", "-6", "20", "-70"]
    out = run("holonomic-check", "--quadratic", "0", "-1", "1-4x", "-n", "300")[1]
    assert out["k"] == 1 and out["passed"] is True
    out = run("holonomic-check", "--rational", "1", "1-x")[1]
    assert out["special_form"]["j"] == 1


def test_manifest_replay_is_byte_identical(tmp_path):
    man = tmp_path / "run.json"
    code, _, text = run("sz-check", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "--tol", "1e-14", "--manifest", str(man))
    data = json.loads(man.read_text())
    assert data["config"]["tol"] == 1e-14 and data["command"] == "sz-check"
    buf = io.StringIO()
    assert main(["replay", str(man)], out=buf) == code
    assert buf.getvalue() == text


def test_replay_detects_tampering(tmp_path):
    man = tmp_path / "run.json"
    run("diagonal", "x+x^2", "-n", "4", "--manifest", str(man))
    data = json.loads(man.read_text())
    data["inputs"]["n"] = 5
    man.write_text(json.dumps(data))
    assert main(["replay", str(man)], out=io.StringIO()) == 1
    assert main(["replay", str(tmp_path / "missing.json")]) == 2


def test_env_and_flag_precedence(monkeypatch):
    monkeypatch.setenv("SZKIT_ORDER", "6")
    _, out, _ = run("expand", "--sz", "x^2-x-1")
    assert len(out["coefficients"]) == 7
    _, out, _ = run("expand", "--sz", "x^2-x-1", "--order", "3")
    assert len(out["coefficients"]) == 4


def test_config():
    assert Config() == Config.from_env({})
    cfg = Config.from_env({"SZKIT_TOL": "1e-9", "SZKIT_JOBS": "3"}, jobs=5)
    assert cfg.tol == 1e-9 and cfg.jobs == 5
    with pytest.raises(ValueError):
        Config.from_env({"SZKIT_ORDER": "many"})


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "szkit.cli", "expand", "--sqrt", "1-4x", "-n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["coefficients"] == ["1", "-2", "-2", "-4"]
