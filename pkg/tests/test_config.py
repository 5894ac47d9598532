import json
from fractions import Fraction

import pytest

from config.defaults import DEFAULT_HORIZON, SUITE_DEFAULTS
from config.loader import CACHE_ENV, HarnessConfig, cache_dir, from_dict, load_config
from core.errors import ConfigError


def test_defaults():
    config = HarnessConfig()
    assert config.horizon == DEFAULT_HORIZON
    assert config.width == Fraction(1, 1000000)
    assert config.suite('tilde') == SUITE_DEFAULTS['tilde']
    assert config.suite('nope') == {}


def test_suite_settings_are_copies():
    config = HarnessConfig()
    config.suite('dual')['samples'] = 0
    assert config.suites['dual']['samples'] == SUITE_DEFAULTS['dual']['samples']
    config.suites['dual']['samples'] = 1
    assert HarnessConfig().suites['dual'] == SUITE_DEFAULTS['dual']


def test_overrides_apply():
    config = from_dict({'horizon': 5, 'seed': 7, 'suites': {'tilde': {'count': 3}}})
    assert config.horizon == 5
    assert config.seed == 7
    assert config.suite('tilde')['count'] == 3
    assert config.suite('tilde')['j0'] == SUITE_DEFAULTS['tilde']['j0']


@pytest.mark.parametrize('data, path', [
    ([], '$'),
    ({'colour': 1}, 'colour'),
    ({'horizon': '5'}, 'horizon'),
    ({'horizon': True}, 'horizon'),
    ({'horizon': 1}, 'horizon'),
    ({'search_budget': 0}, 'search_budget'),
    ({'interval_width': 'wide'}, 'interval_width'),
    ({'interval_width': '0'}, 'interval_width'),
    ({'suites': []}, 'suites'),
    ({'suites': {'nope': {}}}, 'suites.nope'),
    ({'suites': {'tilde': {'colour': 1}}}, 'suites.tilde.colour'),
    ({'suites': {'tilde': {'count': 'two'}}}, 'suites.tilde.count'),
    ({'suites': {'scc-ris': {'eps': [1]}}}, 'suites.scc-ris.eps'),
])
def test_bad_settings_name_their_path(data, path):
    with pytest.raises(ConfigError) as info:
        from_dict(data)
    assert info.value.path == path


def test_load_config_from_file(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'cut_limit': 50}), encoding='utf-8')
    assert load_config(str(path)).cut_limit == 50
    assert load_config(None).cut_limit == HarnessConfig().cut_limit


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / 'missing.json'))
    broken = tmp_path / 'broken.json'
    broken.write_text('{"horizon": ', encoding='utf-8')
    with pytest.raises(ConfigError):
        load_config(str(broken))


def test_to_dict_round_trips_through_from_dict():
    config = from_dict({'seed': 3})
    assert from_dict(config.to_dict()).to_dict() == config.to_dict()


def test_cache_dir(monkeypatch, tmp_path):
    monkeypatch.delenv(CACHE_ENV, raising=False)
    assert cache_dir() is None
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert cache_dir() == str(tmp_path)
