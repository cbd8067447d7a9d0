import pytest

import quiver_hecke.config as config_module
from quiver_hecke.config import Config, get_config, set_config


def test_defaults(clean_env):
    cfg = Config()
    assert cfg.field == "Q"
    assert cfg.trunc == 4
    assert (cfg.level_start, cfg.level_cap) == (2, 8)
    assert cfg.workers == 4
    assert cfg.log_level == "WARNING"
    assert cfg.reports_dir == cfg.data_dir / "reports"
    cfg.validate()


def test_environment_overrides(clean_env):
    clean_env.setenv("KLR_TRUNC", "6")
    clean_env.setenv("KLR_FIELD", "Fp:7")
    clean_env.setenv("KLR_LOG_LEVEL", "debug")
    cfg = Config()
    assert cfg.trunc == 6
    assert cfg.domain().characteristic() == 7
    assert cfg.log_level == "DEBUG"


def test_level_overrides(clean_env):
    clean_env.setenv("KLR_LEVEL_START", "1")
    clean_env.setenv("KLR_LEVEL_CAP", "4")
    cfg = Config()
    assert (cfg.level_start, cfg.level_cap) == (1, 4)
    assert Config(level_cap=2).level_cap == 2


def test_arguments_beat_environment(clean_env):
    clean_env.setenv("KLR_TRUNC", "6")
    assert Config(trunc=3).trunc == 3


def test_bad_integer_in_environment(clean_env):
    clean_env.setenv("KLR_SEED", "many")
    with pytest.raises(ValueError, match="KLR_SEED"):
        Config()


@pytest.mark.parametrize(
    "kwargs",
    [
        {"trunc": 1},
        {"field": "Fp:4"},
        {"field": "R"},
        {"level_start": 3, "level_cap": 2},
        {"level_start": 0},
        {"workers": 0},
        {"fuel": 0},
        {"log_level": "chatty"},
    ],
)
def test_validate_rejects(clean_env, kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs).validate()


def test_to_dict(config):
    data = config.to_dict()
    assert data["trunc"] == 4
    assert data["workers"] == 1
    assert "data_dir" not in data


def test_global_config(clean_env):
    clean_env.setattr(config_module, "_config", None)
    with pytest.raises(RuntimeError):
        get_config()
    cfg = Config(seed=5)
    set_config(cfg)
    assert get_config() is cfg
