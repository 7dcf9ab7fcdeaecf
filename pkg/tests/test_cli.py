import json
import subprocess
import sys

import pytest

from ordlaw.cli import main
from ordlaw.config import Config, load_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_e0(capsys):
    code, out, _ = run(capsys, "count", "e0", "--n", "6")
    assert code == 0
    assert out.splitlines() == ["n,value", "0,1", "1,1", "2,2", "3,4", "4,9", "5,20", "6,48"]


def test_count_omega_constant(capsys):
    _, out, _ = run(capsys, "count", "w", "--n", "5")
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["1"] * 6


def test_count_json(capsys):
    _, out, _ = run(capsys, "count", "w^w", "--n", "5", "--format", "json")
    assert json.loads(out)["values"] == ["1", "1", "2", "3", "5", "7"]


def test_prob_even_file(tmp_path, capsys):
    rec = tmp_path / "even.json"
    rec.write_text('{"K":2,"a":0,"W":[0],"F":[[1,0],[0,0]]}')
    code, out, _ = run(capsys, "--format", "json", "prob", "--rec", str(rec), "--segment", "w")
    report = json.loads(out)
    assert code == 0 and report["limit"] == "1/2" and report["limit_kind"] == "cesaro"


def test_prob_builtin_e0(capsys):
    _, out, _ = run(capsys, "prob", "--rec", "builtin:even-last-coefficient", "--segment", "e0",
                    "--format", "json")
    report = json.loads(out)
    assert report["limit"] == "1/(rho + 1)" and report["rational"] is False
    assert abs(report["limit_value"] - 0.7447726056) < 1e-9


def test_density_and_limit(tmp_path, capsys):
    path = tmp_path / "set.json"
    path.write_text(json.dumps({"parts": [
        {"r": 0, "a": [0], "b": [2], "tail": "none", "ambient": "w"},
        {"r": 0, "a": [0], "b": [3], "tail": "none", "ambient": "w"}]}))
    code, out, _ = run(capsys, "density", "--set", str(path), "--n", "6")
    assert code == 0 and out.splitlines()[-1] == "6,1/1,5/7"
    code, out, _ = run(capsys, "limit", "--set", str(path), "--format", "json")
    assert json.loads(out)["limit"] == "2/3"


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--rec", "builtin:even-last-coefficient", "--segment", "w")
    assert code == 0 and out.splitlines() == ["tail,a,b", "none,0,2"]


def test_rho(capsys):
    _, out, _ = run(capsys, "rho", "e0", "--n", "120")
    rows = dict(line.split(",") for line in out.splitlines()[1:])
    assert rows["rho"].startswith("0.3426917")


def test_matula(capsys):
    assert run(capsys, "matula", "encode", "w^w+1")[1].splitlines()[1] == "w^w+1,10"
    assert run(capsys, "matula", "decode", "6")[1].splitlines()[1] == "6,w+1"
    _, out, _ = run(capsys, "matula", "census", "w", "--n", "10")
    assert out.splitlines()[-1] == "10,4,0"


@pytest.mark.parametrize("argv", [[], ["bogus"], ["count", "w"], ["count", "w", "--n", "x"],
                                  ["matula", "decode", "seven"]])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


@pytest.mark.parametrize("argv, message", [
    (["count", "zz", "--n", "3"], "position"),
    (["count", "e0", "--n", "9999"], "cap"),
    (["prob", "--rec", "/nonexistent.json", "--segment", "w"], "cannot read"),
    (["prob", "--rec", "builtin:nope", "--segment", "w"], "no builtin"),
    (["limit", "--set", "/nonexistent.json"], "cannot read"),
])
def test_computation_errors_exit_2(capsys, argv, message):
    code, _, err = run(capsys, *argv)
    assert code == 2 and message in err


def test_bad_schema_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"r": 0, "a": [0], "tail": "none", "ambient": "w"}')
    code, _, err = run(capsys, "limit", "--set", str(path))
    assert code == 2 and "missing" in err
    path.write_text("{not json")
    code, _, err = run(capsys, "limit", "--set", str(path))
    assert code == 2 and "JSON" in err


def test_config_file_and_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"truncation": 10, "format": "json"}')
    monkeypatch.setenv("ORDLAW_CONFIG", str(cfg))
    assert load_config() == Config(truncation=10, format="json")
    code, out, _ = run(capsys, "count", "w", "--n", "5")
    assert code == 0 and json.loads(out)["values"][0] == "1"
    code, _, err = run(capsys, "count", "w", "--n", "11")
    assert code == 2 and "cap" in err
    cfg.write_text('{"truncation": -1}')
    assert run(capsys, "count", "w", "--n", "1")[0] == 2
    cfg.write_text('{"colour": "red"}')
    assert run(capsys, "count", "w", "--n", "1")[0] == 2


def test_deterministic_output(capsys):
    argv = ["prob", "--rec", "builtin:limit", "--segment", "e0", "--n", "20", "--format", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordlaw.cli", "count", "w^2", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1] == "3,2"
