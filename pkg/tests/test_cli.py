import json
import os
import subprocess
import sys

import pytest

from ladderlab.cli import main


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["zeta"])  # missing --t
    assert exc.value.code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_zeta_output(capsys):
    assert main(["zeta", "--t", "100,30"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "t,z,z_sq,theta"
    assert len(out) == 3
    first = out[1].split(",")
    assert float(first[0]) == 100.0
    assert float(first[2]) == pytest.approx(float(first[1]) ** 2, rel=1e-12)


def test_integral_computation_error_exits_1(capsys):
    rc = main(["integral", "--from", "150", "--to", "250", "--tol", "1e-12"])
    assert rc == 1
    assert "ladderlab:" in capsys.readouterr().err


def test_integral_success(capsys):
    assert main(["integral", "--from", "100", "--to", "120"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("value=")
    assert "abs_error_estimate=" in out


def test_ladder_output(capsys):
    assert main(["ladder", "--T", "500", "--k", "2"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "rung,t"
    ts = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert len(ts) == 3 and ts[0] == 500.0
    assert ts[0] < ts[1] < ts[2]


def test_gram_to_file(tmp_path, capsys):
    out = os.path.join(tmp_path, "gram.csv")
    assert main(["gram", "--from", "100", "--to", "105", "--out", out]) == 0
    with open(out) as fh:
        lines = fh.read().strip().split("\n")
    assert lines[0] == "nu,t,z"
    assert len(lines) >= 2


def test_functional_gamma_json(capsys):
    assert main(["functional", "--id", "gamma", "--x", "1",
                 "--tau-grid", "300,600"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["functional"] == "gamma"
    assert rep["tau_grid"] == [300.0, 600.0]


def test_functional_pi_gamma(capsys):
    assert main(["functional", "--id", "pi-gamma", "--tau", "500", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("pi_surrogate=")
    assert float(out.split("=")[1]) > 0


def test_scan_json_and_window(tmp_path):
    out = os.path.join(tmp_path, "scan.json")
    rc = main(["scan", "--functionals", "gamma", "--n", "3", "--max-xyz", "2",
               "--t-cap", "10000", "--out", out])
    assert rc == 0
    with open(out, "rb") as fh:
        raw = fh.read()
    assert raw.endswith(b"\n") and b"\r" not in raw
    rep = json.loads(raw)
    assert rep["functionals"] == ["gamma"]
    assert {r["functional"] for r in rep["rows"]} == {"gamma"}


def test_scan_bad_window_eps(capsys):
    rc = main(["scan", "--functionals", "gamma", "--n", "3", "--max-xyz", "2",
               "--window-eps", "2.0"])
    assert rc == 2


def test_scan_repeat_bytes_identical(tmp_path):
    a = os.path.join(tmp_path, "a.json")
    b = os.path.join(tmp_path, "b.json")
    args = ["scan", "--functionals", "zeta-segment", "--n", "3", "--max-xyz", "2",
            "--t-cap", "5000"]
    assert main(args + ["--out", a]) == 0
    assert main(args + ["--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_cache_subcommand(tmp_path, capsys, monkeypatch):
    path = os.path.join(tmp_path, "cache.csv")
    assert main(["cache", "--path", path, "--extend-to", "120"]) == 0
    out = capsys.readouterr().out
    assert "checkpoints=2" in out
    # second call extends in place
    assert main(["cache", "--path", path, "--extend-to", "220"]) == 0
    assert "checkpoints=4" in capsys.readouterr().out

    monkeypatch.delenv("HL_CACHE", raising=False)
    assert main(["cache", "--extend-to", "100"]) == 2


def test_hl_cache_env_used_readonly(tmp_path, monkeypatch, capsys):
    path = os.path.join(tmp_path, "cache.csv")
    assert main(["cache", "--path", path, "--extend-to", "200"]) == 0
    capsys.readouterr()
    before = open(path, "rb").read()
    monkeypatch.setenv("HL_CACHE", path)
    assert main(["integral", "--from", "0", "--to", "150"]) == 0
    capsys.readouterr()
    assert open(path, "rb").read() == before  # heavy commands never write it


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "ladderlab.cli", "zeta", "--t", "50"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("t,z")
