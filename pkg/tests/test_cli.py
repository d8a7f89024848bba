from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from laistrygon.cli import SUITES, main, run_suites

from conftest import params


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_nf_examples():
    assert run("nf", "x2*x1", "--ghost", "1", "--q", "generic") == (0, "x1*x2 - (1/2)*x1^2\n")
    assert run("nf", "x1") == (0, "x1\n")
    assert run("nf", "z0*x2", "--ghost", "1") == (0, "(1/q)*x2*z0 - (1/q)*z1\n")
    code, data = run_json("nf", "z0*z1", "--output", "json")
    assert data["schema"] == 1 and data["normal_form"] == "(1/q)*z1*z0"


def test_parse_error_is_structured(capsys):
    code, _ = run("nf", "x2*+")
    err = json.loads(capsys.readouterr().err)
    assert code == 2
    assert err["error"]["type"] == "ParseError" and err["error"]["position"] >= 0


def test_bad_q_is_usage_error(capsys):
    code, _ = run("confluence", "--q", "num:0")
    assert code == 2
    assert json.loads(capsys.readouterr().err)["error"]["type"] == "InvalidSpec"


def test_hilbert():
    assert run("hilbert", "--ghost", "1", "--degree", "4") == (0, "[1,3,7,13,22]\n")
    code, data = run_json("hilbert", "--ghost", "2", "--degree", "6", "--output", "json")
    assert data["oracle_match"] and data["gk_dimension"] == 5


def test_confluence_and_negative_control():
    code, data = run_json("confluence", "--ghost", "2")
    assert code == 0 and data["report"]["passed"]
    code, data = run_json("confluence", "--ghost", "2", "--negative-control")
    assert code == 1 and not data["report"]["passed"]


def test_identities_and_ore():
    assert run("identities", "--ghost", "2")[0] == 0
    code, data = run_json("ore", "--ghost", "2")
    assert code == 0 and len(data["reports"]) == 4
    assert run("ore", "--ghost", "2", "--stage", "top")[0] == 0


def test_braiding_and_twist():
    code, data = run_json("braiding", "--ghost", "2")
    assert code == 0 and data["braid_equation"] and len(data["matrix"]) == 9
    code, data = run_json("twist", "--ghost", "2", "--target", "q^3")
    assert code == 0 and data["matches_target"]


def test_simples_example():
    code, data = run_json("simples", "--ghost", "1", "--q", "root:2", "--a", "1", "--b", "1")
    assert code == 0
    mats = data["module"]["matrices"]
    assert mats["x2"] == [["1", "0"], ["0", "-1"]] and mats["z0"] == [["0", "1"], ["1", "0"]]
    assert data["is_simple"]


def test_simples_usage_errors():
    assert run("simples", "--q", "num:2", "--a", "1", "--b", "1")[0] == 2
    assert run("simples", "--q", "root:3", "--kind", "cyclic")[0] == 2


def test_characters():
    code, data = run_json("characters", "--ghost", "2", "--q", "num:2")
    assert code == 0 and len(data["families"]) == 2
    code, data = run_json("characters", "--ghost", "1", "--q", "generic")
    assert code == 0 and len(data["families"]) == 3


def test_point_commands():
    code, data = run_json("point", "propagate", "--p0", "0:0:1", "--depth", "3")
    assert code == 0 and data["points"] == [["0", "0", "1"]] * 4
    code, data = run_json("point", "propagate", "--p0", "1:0:0", "--ghost", "2", "--q", "num:2")
    assert code == 0 and data["report"]["passed"]
    code, data = run_json("point", "propagate", "--p0", "1:5:1", "--ghost", "2")
    assert code == 1 and not data["on_variety"] and data["failure_depth"] == 4
    code, data = run_json("point", "classify", "--ghost", "1", "--q", "num:2", "--depth", "5")
    assert code == 0 and data["matches_expected"]
    assert run("point", "classify", "--q", "num:-1")[0] == 2


def test_system_and_obstruction():
    assert run("system", "--g", "2", "--J", "8")[0] == 0
    assert run("system", "--g", "2", "--J", "6", "--mode", "numeric_uniqueness", "--seed", "4")[0] == 0
    code, data = run_json("obstruction", "--n", "3", "--block", "2")
    assert code == 0 and data["certified"]


@pytest.mark.parametrize("argv", [["--ghost", "2", "--q", "generic"], ["--ghost", "1", "--q", "root:2"]])
def test_verify_all_passes(argv):
    code, data = run_json("verify-all", *argv)
    assert code == 0 and data["passed"] and data["first_failure"] is None
    assert list(data["suites"]) == [name for name, _ in SUITES]


def test_verify_all_negative_control():
    code, data = run_json("verify-all", "--ghost", "1", "--negative-control")
    assert code == 1
    assert data["first_failure"].startswith("confluence:")


def test_verify_all_is_deterministic(monkeypatch):
    a = run("verify-all", "--ghost", "1", "--seed", "5")[1]
    monkeypatch.setenv("LAISTRYGON_THREADS", "3")
    b = run("verify-all", "--ghost", "1", "--seed", "5")[1]
    assert a == b


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("LAISTRYGON_THREADS", "zero")
    assert run("verify-all", "--ghost", "1")[0] == 2


def test_run_suites_keys():
    reps = run_suites(params(1), threads=2)
    assert list(reps) == ["confluence", "identities", "hilbert", "ore", "braiding", "simples",
                          "characters", "systems", "points"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laistrygon.cli", "hilbert", "--degree", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "[1,3,7,13]"
    proc = subprocess.run([sys.executable, "-m", "laistrygon.cli", "frobnicate"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
