"""Config parsing, schema validation, artifacts and exit codes."""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenrestrict import cli

_KEY = st.text(alphabet="abcdefgh-", min_size=1, max_size=8).filter(
    lambda s: s.strip("-") == s)
_VAL = st.text(alphabet="xyz0123456789.:,", min_size=1, max_size=12)


# ----------------------------------------------------------------- config

@given(st.dictionaries(_KEY, _VAL, min_size=1, max_size=6))
def test_parse_render_round_trip(cfg):
    assert cli.parse_config(cli.render_config(cfg)) == cfg


def test_parse_config_comments_and_errors():
    text = "# full-line comment\nfamily = zonal  # trailing\n\np = 2\n"
    assert cli.parse_config(text) == {"family": "zonal", "p": "2"}
    with pytest.raises(cli.ConfigError, match="key = value"):
        cli.parse_config("just words\n")
    with pytest.raises(cli.ConfigError, match="duplicate"):
        cli.parse_config("p = 2\np = 4\n")
    with pytest.raises(cli.ConfigError, match="empty"):
        cli.parse_config("p =\n")


def test_validate_config_names_offending_field():
    base = {"experiment": "sweep", "family": "zonal", "curve": "equator",
            "p": "2", "degrees": "4,6,8,11"}
    with pytest.raises(cli.ConfigError, match="unknown config key: fake-knob"):
        cli.validate_config({**base, "fake-knob": "1"})
    missing = {k: v for k, v in base.items() if k != "degrees"}
    with pytest.raises(cli.ConfigError, match="degrees: required"):
        cli.validate_config(missing)
    with pytest.raises(cli.ConfigError, match="unknown experiment"):
        cli.validate_config({"experiment": "dance"})
    with pytest.raises(cli.ConfigError, match="experiment: missing"):
        cli.validate_config({"p": "2"})


def test_validate_config_fills_defaults():
    experiment, cfg = cli.validate_config(
        {"experiment": "phase", "theta0-list": "0.8"})
    assert experiment == "phase"
    assert cfg["tolerance"] == "1e-6"
    assert cfg["out"] == "."


# ----------------------------------------------------------------- list

def test_list_catalog(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    for name in cli.EXPERIMENTS:
        assert name in out


# ----------------------------------------------------------------- run paths

SWEEP_ARGS = ["run", "sweep", "--family", "highest-weight", "--curve", "equator",
              "--p", "2", "--degrees", "16:45"]


def test_sweep_run_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "a"
    code = cli.main(SWEEP_ARGS + ["--tolerance", "none", "--out", str(out)])
    assert code == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0] == "n,lambda,p,restricted_norm,ambient_norm,ratio"
    assert len(lines) == 1 + 4
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdicts"]["exponent_fit"] == "no_contract"
    assert summary["verdicts"]["envelope"] == "pass"
    assert summary["exit_code"] == 0
    assert math.isclose(summary["results"]["oracle"]["value"], 0.25)
    assert "out" not in summary["config"] and "plot" not in summary["config"]
    stdout = capsys.readouterr().out
    assert "sweep:envelope: pass" in stdout
    assert "sweep:exponent_fit: no_contract" in stdout


def test_runs_are_byte_deterministic(tmp_path):
    outs = [tmp_path / "run1", tmp_path / "nested" / "run2"]
    for out in outs:
        assert cli.main(SWEEP_ARGS + ["--tolerance", "none", "--out",
                                      str(out)]) == 0
    assert (outs[0] / "sweep.csv").read_bytes() == (outs[1] / "sweep.csv").read_bytes()
    assert (outs[0] / "summary.json").read_bytes() == (outs[1] / "summary.json").read_bytes()


def test_plot_flag_writes_svg(tmp_path):
    out = tmp_path / "p"
    code = cli.main(SWEEP_ARGS + ["--tolerance", "none", "--out", str(out),
                                  "--plot"])
    assert code == 0
    svg = (out / "sweep.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg
    summary = json.loads((out / "summary.json").read_text())
    assert summary["svg"] == "sweep.svg"


def test_failed_contract_exits_one(tmp_path, capsys):
    out = tmp_path / "f"
    code = cli.main(SWEEP_ARGS + ["--tolerance", "1e-6", "--out", str(out)])
    assert code == 1
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdicts"]["exponent_fit"] == "fail"
    assert summary["exit_code"] == 1
    assert "sweep:exponent_fit: fail" in capsys.readouterr().out


def test_runtime_failure_still_writes_summary(tmp_path, capsys):
    out = tmp_path / "e"
    code = cli.main(SWEEP_ARGS + ["--num-points", "8", "--out", str(out)])
    assert code == 1
    summary = json.loads((out / "summary.json").read_text())
    assert "underresolves" in summary["error"]
    assert summary["exit_code"] == 1
    assert not (out / "sweep.csv").exists()
    assert "experiment failed" in capsys.readouterr().err


def test_config_errors_exit_two(tmp_path, capsys):
    out = tmp_path / "x"
    bad_family = ["run", "sweep", "--family", "spiral", "--curve", "equator",
                  "--p", "2", "--degrees", "16:45", "--out", str(out)]
    assert cli.main(bad_family) == 2
    assert "unknown family" in capsys.readouterr().err
    mismatch = ["run", "sweep", "--family", "zonal-s3", "--curve", "equator",
                "--p", "2", "--degrees", "16:45", "--out", str(out)]
    assert cli.main(mismatch) == 2
    assert "different spheres" in capsys.readouterr().err
    assert not (out / "summary.json").exists()


def test_config_file_unknown_key_exits_two(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("experiment = phase\ntheta0-list = 0.8\nbogus = 1\n")
    assert cli.main(["run", "--config", str(cfgfile)]) == 2
    assert "unknown config key: bogus" in capsys.readouterr().err
    assert cli.main(["run", "--config", str(tmp_path / "absent.cfg")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_flag_overrides_config_file(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("experiment = phase\ntheta0-list = 0.8\n"
                       "tolerance = 1e-12\n")
    out = tmp_path / "o"
    # the file tolerance would fail; the flag relaxes it and must win
    code = cli.main(["run", "--config", str(cfgfile), "--tolerance", "1e-4",
                     "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["tolerance"] == "1e-4"


def test_phase_run(tmp_path, capsys):
    out = tmp_path / "ph"
    theta = f"{math.pi / 4},{math.pi / 2}"
    code = cli.main(["run", "phase", "--theta0-list", theta, "--out", str(out)])
    assert code == 0
    lines = (out / "phase.csv").read_text().splitlines()
    assert lines[0] == "theta0,c_hat,c_theory"
    summary = json.loads((out / "summary.json").read_text())
    assert summary["results"]["max_deviation"] < 1e-6
    assert "phase:phase_expansion: pass" in capsys.readouterr().out


def test_torus_run(tmp_path):
    out = tmp_path / "t"
    code = cli.main(["run", "torus", "--n-list", "25,169", "--seeds", "4",
                     "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["verdicts"]["sup_bound"] == "pass"
    assert summary["verdicts"]["sup_slope"] == "pass"
    lines = (out / "torus.csv").read_text().splitlines()
    assert lines[0] == "N,r2,sup,curve_l2,seed"
    assert len(lines) == 1 + 8
    # torus with neither n-list nor n-max is a config error
    assert cli.main(["run", "torus", "--out", str(tmp_path / "t2")]) == 2


def test_oracle_table_run(tmp_path):
    out = tmp_path / "orc"
    code = cli.main(["run", "oracle-table", "--d", "2", "--k", "1",
                     "--out", str(out)])
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    table = {row["p"]: row for row in summary["results"]["table"]}
    assert math.isclose(table[4.0]["exponent"], 0.25)
    assert table[4.0]["log_endpoint"]
    assert math.isclose(table[6.0]["exponent"], 1 / 3)
    assert table["inf"]["exponent"] == 0.5
    assert not (out / "oracle-table.csv").exists()
    # curved improvement asks for the (2, 1) geometry only
    assert cli.main(["run", "oracle-table", "--d", "3", "--k", "2",
                     "--curved", "true", "--out", str(out)]) == 2
