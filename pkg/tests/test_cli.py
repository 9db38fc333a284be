import subprocess
import sys

import pytest

from phasekit.cli import main


def _write_config(tmp_path, out_name="series.csv"):
    out = tmp_path / out_name
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text(
        "system=boson\nN=2\nubar=0.05\nsteps=5\ntau_max=1.0\n"
        f"channels=avgC_CN,avgW\nout={out}\n",
        encoding="utf-8",
    )
    return cfg, out


def test_run_subcommand(tmp_path, capsys):
    cfg, out = _write_config(tmp_path)
    assert main(["run", "--config", str(cfg)]) == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out
    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header == "tau,avgC_CN,avgW"


def test_run_overrides(tmp_path):
    cfg, out = _write_config(tmp_path)
    assert main(["run", "--config", str(cfg), "--steps", "9",
                 "--tau-max", "2.0", "--integrator", "rk4"]) == 0
    rows = out.read_text(encoding="utf-8").strip().splitlines()
    assert len(rows) == 10  # header + 9 grid points
    assert rows[-1].split(",")[0] == "2"


def test_run_missing_config_exits_one(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 1
    assert "cannot read config" in capsys.readouterr().err


def test_run_invalid_config_exits_one(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("system=boson\nN=0\nubar=1\nchannels=xi\n", encoding="utf-8")
    assert main(["run", "--config", str(cfg)]) == 1
    assert "config error" in capsys.readouterr().err


def test_run_without_out_exits_one(tmp_path, capsys):
    cfg = tmp_path / "no_out.cfg"
    cfg.write_text("system=boson\nN=2\nubar=1\nchannels=xi\n", encoding="utf-8")
    assert main(["run", "--config", str(cfg)]) == 1


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run"])  # --config is required
    assert exc.value.code == 1


def test_figure_subcommand(tmp_path, capsys):
    assert main(["figure", "fig9", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.count("wrote") == 4
    assert len(list(tmp_path.glob("fig9_*.csv"))) == 4


def test_figure_unknown_preset_exits_one(tmp_path, capsys):
    assert main(["figure", "fig0", "--out", str(tmp_path)]) == 1
    assert "unknown preset" in capsys.readouterr().err


def test_verify_reports_and_exits_two(capsys):
    # the battery includes the honestly-failing printed-squeezing check, so
    # the designed exit status for a full verify run is 2
    code = main(["verify", "--n-max", "3", "--tol", "1e-12"])
    out = capsys.readouterr().out
    assert code == 2
    assert "squeezing-closed-form" in out
    assert "PASS  boson-beta-unitarity" in out


def test_verify_bad_n_max_exits_one(capsys):
    assert main(["verify", "--n-max", "1"]) == 1


def test_module_invocation_subprocess(tmp_path):
    cfg, out = _write_config(tmp_path)
    proc = subprocess.run(
        [sys.executable, "-m", "phasekit", "run", "--config", str(cfg)],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
