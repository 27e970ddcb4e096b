import pytest

from solvers.config import DEFAULT_CACHE_PATH, get_config
from solvers.errors import ConfigError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv('TODA_CACHE_PATH', raising=False)
    monkeypatch.delenv('TODA_ORACLE_DMAX', raising=False)


def test_defaults():
    config = get_config()
    assert config.cache_path == DEFAULT_CACHE_PATH
    assert config.oracle_dmax == 7
    assert (config.gmax, config.dmax, config.lambda_order) == (3, 5, 20)
    assert config.output_format == 'table'


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('TODA_CACHE_PATH', '/tmp/h.json')
    monkeypatch.setenv('TODA_ORACLE_DMAX', '5')
    config = get_config()
    assert config.cache_path == '/tmp/h.json'
    assert config.oracle_dmax == 5


def test_flags_beat_environment(monkeypatch):
    monkeypatch.setenv('TODA_ORACLE_DMAX', '5')
    assert get_config(oracle_dmax=6).oracle_dmax == 6
    assert get_config(oracle_dmax=None).oracle_dmax == 5


def test_other_settings_ignore_environment(monkeypatch):
    monkeypatch.setenv('GMAX', '9')
    assert get_config().gmax == 3


@pytest.mark.parametrize('overrides', [
    {'dmax': 0},
    {'gmax': -1},
    {'lambda_order': -2},
    {'oracle_dmax': 0},
    {'output_format': 'xml'},
    {'oracle_backend': 'characters'},
    {'colour': 'blue'},
])
def test_invalid_configuration(overrides):
    with pytest.raises(ConfigError):
        get_config(**overrides)


def test_non_integer_environment(monkeypatch):
    monkeypatch.setenv('TODA_ORACLE_DMAX', 'seven')
    with pytest.raises(ConfigError):
        get_config()
