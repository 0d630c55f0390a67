"""CLI contract: formats, determinism, exit codes, output plumbing.

Most checks drive relhur.cli.run in process for speed; one test runs the
installed console script end to end through a real subprocess.
"""

import json
import math
import subprocess
import sys

import pytest

from relhur.cli import run


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_bound_json_record(capsys):
    code, out = _capture(capsys, ["bound", "--d", "1.0"])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"d", "gamma", "err_est", "tol"}
    assert doc["d"] == 1.0
    assert doc["tol"] == 1e-7
    assert doc["gamma"] == pytest.approx(1.672106402775, abs=1e-6)
    assert doc["err_est"] <= 1e-7


def test_bound_infinite_scale(capsys):
    code, out = _capture(capsys, ["bound", "--d-inf"])
    assert code == 0
    doc = json.loads(out)
    assert doc["d"] == "inf"
    assert doc["gamma"] == pytest.approx(1.0 + 0.5 * math.sqrt(5.0), abs=1e-6)


def test_twelve_significant_digits(capsys):
    _, out = _capture(capsys, ["bound", "--d", "1.0"])
    gamma_text = out.split('"gamma":')[1].split(",")[0]
    mantissa = gamma_text.replace("-", "").replace(".", "").split("e")[0]
    assert len(mantissa.lstrip("0")) <= 12


def test_sweep_csv_schema(capsys):
    code, out = _capture(capsys,
                         ["sweep", "--d-min", "0.5", "--d-max", "2",
                          "--points", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "param,gamma,err_est"
    assert len(lines) == 4
    params = [float(l.split(",")[0]) for l in lines[1:]]
    assert params == [0.5, 1.25, 2.0]
    gammas = [float(l.split(",")[1]) for l in lines[1:]]
    assert gammas[0] < gammas[1] < gammas[2]


def test_sweep_log_spacing(capsys):
    code, out = _capture(capsys,
                         ["sweep", "--d-min", "0.5", "--d-max", "8",
                          "--points", "5", "--log"])
    assert code == 0
    params = [float(l.split(",")[0]) for l in out.splitlines()[1:]]
    assert params == pytest.approx([0.5, 1.0, 2.0, 4.0, 8.0], rel=1e-12)


def test_sweep_json_rows(capsys):
    code, out = _capture(capsys,
                         ["sweep", "--d-min", "1", "--d-max", "2",
                          "--points", "2", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["param"] for r in rows] == [1.0, 2.0]
    assert all(set(r) == {"param", "gamma", "err_est"} for r in rows)


def test_byte_identical_reruns(capsys):
    _, out1 = _capture(capsys, ["sweep", "--d-min", "0.5", "--d-max", "4",
                                "--points", "4"])
    _, out2 = _capture(capsys, ["sweep", "--d-min", "0.5", "--d-max", "4",
                                "--points", "4"])
    assert out1 == out2


def test_threaded_sweep_identical(capsys, monkeypatch):
    args = ["sweep", "--d-min", "0.5", "--d-max", "4", "--points", "4"]
    _, serial = _capture(capsys, args)
    monkeypatch.setenv("REL_HUR_THREADS", "4")
    _, threaded = _capture(capsys, args)
    assert serial == threaded


def test_hydrogen_record(capsys):
    code, out = _capture(capsys, ["hydrogen", "--Z", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["Z"] == 1
    assert doc["alpha"] == pytest.approx(7.2973525693e-3, rel=1e-12)
    assert doc["gamma_c"] == pytest.approx(0.99997337396827, rel=1e-10)
    assert doc["gamma"] == pytest.approx(1.73211614314, rel=1e-10)
    assert "gamma_oracle" not in doc


def test_hydrogen_oracle_flag(capsys):
    code, out = _capture(capsys, ["hydrogen", "--Z", "80", "--oracle"])
    assert code == 0
    doc = json.loads(out)
    assert doc["gamma_oracle"] == pytest.approx(doc["gamma"], rel=1e-6)
    assert doc["rel_diff"] <= 1e-6


def test_hopfion_single_record(capsys):
    code, out = _capture(capsys, ["hopfion", "--a", "1.0"])
    assert code == 0
    doc = json.loads(out)
    assert doc["gamma"] == pytest.approx(1.9649111869950, abs=1e-6)
    assert doc["delta_r_sq"] == pytest.approx(1.0794334081891, rel=1e-6)
    assert doc["delta_p_sq"] == pytest.approx(3.5767616079766, rel=1e-6)


def test_hopfion_curve_csv(capsys):
    code, out = _capture(capsys, ["hopfion", "--a-min", "1", "--a-max", "5",
                                  "--points", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "param,gamma,err_est"
    gammas = [float(l.split(",")[1]) for l in lines[1:]]
    assert gammas[0] > gammas[1] > gammas[2]


def test_verify_passes(capsys):
    code, out = _capture(capsys, ["verify"])
    assert code == 0
    assert "overall: PASS" in out
    assert out.count("PASS") >= 4


def test_verify_strict_passes(capsys):
    code, out = _capture(capsys, ["verify", "--strict"])
    assert code == 0
    assert "overall: PASS" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "bound.json"
    code, _ = _capture(capsys, ["bound", "--d", "1.0",
                                "--output", str(target)])
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["d"] == 1.0


def test_unwritable_output(capsys):
    code = run(["bound", "--d", "1.0",
                "--output", "/nonexistent-dir/x.json"])
    capsys.readouterr()
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["bound"],                                   # missing required flag
    ["bound", "--d", "1.0", "--d-inf"],          # mutually exclusive
    ["bound", "--d", "-1.0"],                    # negative scale
    ["nonsense"],                                # unknown subcommand
    ["sweep", "--d-min", "2", "--d-max", "1", "--points", "3"],
    ["sweep", "--d-min", "0", "--d-max", "1", "--points", "1"],
    ["sweep", "--d-min", "0", "--d-max", "1", "--points", "3", "--log"],
    ["hydrogen", "--Z", "138"],                  # alpha Z >= 1
    ["hydrogen", "--Z", "137"],                  # exponent below 1/2
    ["hydrogen", "--Z", "0"],
    ["hopfion", "--a", "1.0", "--a-min", "0.5"],
    ["hopfion", "--a-min", "0.5", "--a-max", "2"],   # missing --points
    ["hopfion", "--a", "0.001"],                 # outside width range
])
def test_usage_errors_exit_2(capsys, argv):
    code = run(argv)
    capsys.readouterr()
    assert code == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()


def test_console_script_end_to_end(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "relhur.cli", "bound", "--d", "0.5"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["gamma"] == pytest.approx(1.568826553429, abs=1e-6)
    assert proc.stdout.endswith("\n")
