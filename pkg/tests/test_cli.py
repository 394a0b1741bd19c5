import io
import json
import os

import pytest
import yaml

from src.cli import run
from src.config import build_config, parse_config_text
from src.sweep.datasets import ORDER_COLUMNS


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_thresholds_table():
    code, out, err = _run("thresholds")
    assert code == 0, err
    assert "omega_1" in out and "2.02452" in out
    assert "xi" in out


def test_branches_table():
    code, out, _ = _run("branches", "--omega", "2.2", "--kerr=-")
    assert code == 0
    assert "minus" in out and "1.79711" in out


def test_numerical_error_exits_2():
    code, _, err = _run("thresholds", "--g_m", "0")
    assert code == 2
    assert err.startswith("error: ZeroCoupling:")


@pytest.mark.parametrize(
    "argv",
    [
        ["branches", "--kappa_a", "-1"],
        ["branches", "--no-such-flag", "1"],
        ["cut", "--config", "/nonexistent.cfg"],
        [],
    ],
)
def test_configuration_errors_exit_1(argv):
    code, _, err = _run(*argv)
    assert code == 1
    assert err.startswith("error: ")


def test_dump_config_prints_effective_config():
    code, out, _ = _run("branches", "--dump-config", "-", "--ratio", "0.8", "--kerr-sign=-")
    assert code == 0
    cfg = build_config(parse_config_text(out))
    assert cfg.delta_m_over_delta_a == 0.8
    assert cfg.kerr_sign.value == "-"


def test_cut_to_file_writes_manifest(tmp_path, monkeypatch, capfd):
    monkeypatch.chdir(tmp_path)
    code, out, err = _run("cut", "--cut-count", "5", "--jobs", "1", "--out", "cut.csv")
    assert code == 0, err
    assert out == ""
    # default WARNING keeps both the injected and the process stderr quiet
    assert err == ""
    assert capfd.readouterr().err == ""
    logs = list((tmp_path / "logs").glob("*.log"))
    assert len(logs) == 1
    assert "[INFO] src.run.cli: cut -> cut.csv" in logs[0].read_text()
    lines = (tmp_path / "cut.csv").read_text().splitlines()
    assert lines[0] == ",".join(ORDER_COLUMNS)
    assert len(lines) == 6
    manifest = yaml.safe_load((tmp_path / "cut.csv.manifest.yaml").read_text())
    assert manifest["command"] == "cut"
    assert manifest["run_id"].endswith("_cut_cut")
    assert logs[0].name == f"{manifest['run_id']}.log"
    assert set(manifest["env"]["git"]) == {"commit", "dirty"}


def test_config_file_and_json_output(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("kerr_sign=-\nomega_count=3\nratio_count=2\nformat=json\njobs=1\n")
    code, out, err = _run("phase-diagram", "--config", str(cfg))
    assert code == 0, err
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 6
    assert all(r["kerr_sign"] == "-" for r in rows)
    assert {"omega", "ratio", "phase", "status"} <= set(rows[0])


def test_contrast_csv_to_stdout():
    code, out, _ = _run("contrast", "--omega-count", "3", "--ratio-count", "2", "--jobs", "1")
    assert code == 0
    header, *body = out.strip().splitlines()
    assert header.startswith("omega,ratio,contrast")
    assert len(body) == 6


def test_dump_config_to_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = _run("thresholds", "--dump-config", "effective.cfg")
    assert code == 0
    assert os.path.exists(tmp_path / "effective.cfg")


@pytest.mark.slow
def test_oracle_subcommand(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, err = _run(
        "oracle",
        "--oracle-count", "2",
        "--omega-min", "2.2",
        "--omega-max", "2.3",
        "--ratio-min", "1.2",
        "--ratio-max", "1.3",
        "--dt", "5e-3",
        "--t-end", "400",
        "--settle-tol", "1e-10",
        "--out", "oracle.csv",
    )
    assert code == 0, err
    assert "kerr_sign" in out
    for suffix in ("oracle.csv", "oracle_summary.csv", "oracle_report.md", "oracle_metrics.json"):
        assert (tmp_path / suffix).exists()


def test_info_log_level_goes_to_injected_stderr(tmp_path, monkeypatch, capfd):
    monkeypatch.chdir(tmp_path)
    code, _, err = _run("cut", "--cut-count", "3", "--jobs", "1", "--out", "cut.csv", "--log-level", "INFO")
    assert code == 0, err
    assert "[INFO] src.run.cli: cut -> cut.csv" in err
    assert "[INFO] src.run.sweep:" in err
    assert capfd.readouterr().err == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["phase-diagram", "--kerr=-", "--omega-count", "7", "--ratio-count", "3"],
        ["cut", "--cut-count", "9"],
        ["fluctuations", "--cut-count", "9"],
        ["contrast", "--omega-count", "5", "--ratio-count", "3"],
    ],
)
def test_output_bytes_do_not_depend_on_jobs(argv):
    code1, serial, err1 = _run(*argv, "--jobs", "1")
    code3, parallel, err3 = _run(*argv, "--jobs", "3")
    assert code1 == code3 == 0, err1 + err3
    assert serial == parallel
    assert serial.count("\n") > 1
