import zlib

import pytest

from config.loader import HarnessConfig, from_dict
from core.errors import UnknownSuite
from harness.suites import SUITES, run_suite, suite_names

SMALL = {
    'schreier-oracle': {'max_pos': 6, 'max_index': 2},
    'norm-oracle': {'samples': 10},
    'norm-axioms': {'samples': 10},
    'uniform-ell1': {'samples': 4},
    'aux-upper': {'instances': 6},
    'basic-inequality': {'samples': 5},
    'c0-array': {'samples': 2},
    'tilde': {'samples': 3},
    'p-upper': {'samples': 4},
    'dual': {'samples': 4},
}


@pytest.fixture(scope='module')
def small_config():
    return from_dict({'suites': SMALL})


def test_registry():
    assert suite_names() == sorted(SUITES)
    assert {'schedule', 'schreier-oracle', 'norm-oracle', 'dual', 'tilde', 'c0-array'} <= set(suite_names())


def test_unknown_suite():
    with pytest.raises(UnknownSuite) as info:
        run_suite('unknown')
    assert 'schedule' in str(info.value)


def test_schedule_suite():
    report = run_suite('schedule', HarnessConfig())
    assert report.ok
    assert report.summary()['total'] == 4
    assert report.params['horizon'] == 4


def test_runs_are_reproducible(small_config):
    first = run_suite('schreier-oracle', small_config)
    second = run_suite('schreier-oracle', small_config)
    assert first.ok
    assert [r.to_dict() for r in first.rows] == [r.to_dict() for r in second.rows]
    assert first.params['seed'] == second.params['seed']


def test_seed_mixes_in_the_suite_name(small_config):
    seed = run_suite('schedule', small_config).params['seed']
    assert seed == small_config.seed ^ zlib.crc32(b'schedule')
    assert seed != small_config.seed ^ zlib.crc32(b'scc-ris')


@pytest.mark.slow
@pytest.mark.parametrize('name', sorted(set(SUITES) - {'schedule', 'schreier-oracle'}))
def test_suite_passes(name, small_config):
    report = run_suite(name, small_config)
    assert report.rows
    assert report.ok, [r.to_dict() for r in report.failures][:3]


def test_oracle_suite_reaches_wider_supports():
    params = HarnessConfig().suite('norm-oracle')
    assert params['max_support'] >= 6
    assert params['max_pos'] >= params['max_support']


@pytest.mark.slow
def test_aux_upper_asserts_only_full_index_instances(small_config):
    report = run_suite('aux-upper', small_config)
    assert report.ok
    for row in report.rows:
        full = row.certificate['in_hypothesis']
        assert row.status == ('pass' if full else 'measured')
        assert full == ('levels=[1]' in row.instance)


@pytest.mark.slow
def test_tilde_asserts_the_upper_estimate_inside_its_hypotheses(small_config):
    report = run_suite('tilde', small_config)
    assert report.ok
    uppers = [r for r in report.rows if r.claim.startswith('aux tilde norm')]
    assert {r.instance.split(' ')[0]: r.status for r in uppers} == {
        'picks=[0]': 'measured', 'picks=[1]': 'pass', 'picks=[0,': 'measured',
    }
    assert any(r.claim == 'engine tilde norm >= witness value' for r in report.rows)


@pytest.mark.slow
def test_c0_array_trend_is_measured_below_full_index(small_config):
    report = run_suite('c0-array', small_config)
    assert report.ok
    trend = [r for r in report.rows if r.claim.startswith('upper ratio')]
    assert trend and all(r.status == 'measured' for r in trend)
    firsts = {r.certificate['first_support'] for r in report.rows if 'first_support' in r.certificate}
    assert firsts == {8, 12}


@pytest.mark.slow
def test_p_upper_checks_witness_values_against_the_enclosure(small_config):
    report = run_suite('p-upper', small_config)
    enclosed = [r for r in report.rows if r.claim == 'witness value lies in the norm enclosure']
    assert enclosed and all(r.status == 'pass' for r in enclosed)
