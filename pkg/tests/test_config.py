from pathlib import Path

import pytest

from src.config import CONFIG_KEYS, JOBS_ENV, RunConfig, build_config, dump_config, load_config_file, parse_config_text
from src.errors import ConfigError
from src.model import KerrSign

EXPERIMENTS = Path(__file__).resolve().parent.parent / "experiments"


def test_defaults_are_the_reference_point():
    p = RunConfig().system_params()
    assert (p.delta_a, p.delta_m, p.kappa_a, p.gamma_m, p.g_m) == pytest.approx((3.0, 3.9, 1.0, 1.0, 2.4))
    assert p.kerr_sign is KerrSign.POSITIVE
    assert p.omega_drive == pytest.approx(2.2)


def test_parse_config_text():
    values = parse_config_text("# comment\n\nomega = 2.05   # inline\nkerr_sign=-\n")
    assert values == {"omega": "2.05", "kerr_sign": "-"}


@pytest.mark.parametrize("text", ["omega 2.0\n", "not_a_key=1\n"])
def test_parse_config_text_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config_file("/nonexistent/run.cfg")


def test_overrides_win_over_file_values():
    cfg = build_config({"omega": "2.0", "kerr_sign": "+"}, {"omega": "2.3", "g_m": None})
    assert cfg.omega == 2.3
    assert cfg.kerr_sign is KerrSign.POSITIVE
    assert cfg.g_m == 2.4


@pytest.mark.parametrize(
    "values",
    [
        {"kappa_a": "-1"},
        {"kerr_sign": "sideways"},
        {"omega_min": "2.4", "omega_max": "1.8"},
        {"ratio_count": "1"},
        {"format": "xml"},
        {"dt": "1.0", "t_end": "0.5"},
        {"t_end": "400", "max_t_end": "100"},
        {"jobs": "0"},
    ],
)
def test_invalid_values_become_config_errors(values):
    with pytest.raises(ConfigError):
        build_config(values)


def test_rates_are_normalized_by_kappa_a():
    cfg = build_config({"kappa_a": "2", "delta_a": "6", "gamma_m": "2", "g_m": "4.8", "omega": "4.4", "kerr_abs": "0.5"})
    p = cfg.system_params()
    assert p.kappa_a == 1.0
    assert p.delta_a == pytest.approx(3.0)
    assert p.delta_m == pytest.approx(3.9)
    assert p.g_m == pytest.approx(2.4)
    assert p.omega_drive == pytest.approx(2.2)
    assert p.kerr_magnitude == pytest.approx(0.25)


def test_dump_and_reload_is_identity():
    cfg = build_config({"omega": "2.05", "kerr_sign": "-", "jobs": "3", "delta_m_over_delta_a": "0.8", "settle_tol": "1e-11"})
    text = dump_config(cfg)
    assert text.startswith("#")
    assert build_config(parse_config_text(text)) == cfg


def test_dump_skips_unset_jobs():
    text = dump_config(RunConfig())
    assert "jobs=" not in text
    assert {line.split("=")[0] for line in text.splitlines()[1:]} == set(CONFIG_KEYS) - {"jobs"}


def test_jobs_resolution(monkeypatch):
    monkeypatch.delenv(JOBS_ENV, raising=False)
    assert build_config({"jobs": "4"}).resolved_jobs() == 4
    monkeypatch.setenv(JOBS_ENV, "3")
    assert RunConfig().resolved_jobs() == 3
    assert build_config({"jobs": "2"}).resolved_jobs() == 2
    monkeypatch.setenv(JOBS_ENV, "many")
    with pytest.raises(ConfigError):
        RunConfig().resolved_jobs()


def test_specs_follow_the_config():
    cfg = build_config({"omega_count": "5", "ratio_count": "3", "cut_count": "7", "delta_m_over_delta_a": "0.8"})
    grid = cfg.grid_spec()
    assert grid.size == 15
    cut = cfg.cut_spec()
    assert cut.ratios() == [0.8]
    assert len(cut.omegas()) == 7
    assert cfg.oracle_settings().seed == 42


@pytest.mark.parametrize("path", sorted(EXPERIMENTS.glob("*.cfg")), ids=lambda p: p.stem)
def test_shipped_experiment_configs_load(path):
    cfg = build_config(load_config_file(str(path)))
    assert cfg.system_params().g_m == pytest.approx(2.4)
