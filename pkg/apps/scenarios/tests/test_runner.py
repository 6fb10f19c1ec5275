import json

import pytest

from core.exceptions import ScenarioParseError
from apps.scenarios import runner
from apps.scenarios.reports import emit_json, emit_text, normalize
from apps.scenarios.runner import (
    EXIT_FAILURES,
    EXIT_OK,
    load_scenario,
    parse_scenario,
    run_scenario,
    run_scenario_file,
    scenario_hash,
)
from .utils import SL3_DIAGONAL, SL3_E12, golden, lookup, shipped, sl3_scenario


def test_empty_scenario_passes():
    outcome = run_scenario({'name': 'empty'})
    assert outcome.exit_code == EXIT_OK
    assert outcome.report['analyses'] == {}
    assert outcome.report['failures'] == []
    assert outcome.report['provenance']['tool'] == 'rigidkit'


def test_non_commuting_generators_are_reported():
    outcome = run_scenario(sl3_scenario([SL3_DIAGONAL, SL3_E12], analyses=['roots', 'rigidity']))
    assert outcome.exit_code == EXIT_FAILURES
    assert {f['analysis'] for f in outcome.failures} == {'roots', 'rigidity'}
    assert all(f['code'] == 'not_abelian' for f in outcome.failures)
    assert 'roots' not in outcome.report['analyses']


def test_analyses_run_in_fixed_order():
    raw = sl3_scenario([SL3_DIAGONAL], analyses=['rigidity', 'roots'])
    assert list(run_scenario(raw).report['analyses']) == ['roots', 'rigidity']


def test_analysis_override():
    raw = sl3_scenario([SL3_DIAGONAL], analyses=['roots', 'chambers'])
    report = run_scenario(raw, analyses=['chambers']).report
    assert list(report['analyses']) == ['chambers']
    assert report['analyses']['chambers']['count'] == 2


def test_extend_without_representation_fails():
    outcome = run_scenario(sl3_scenario([SL3_DIAGONAL], analyses=['extend']))
    assert outcome.failures == [{
        'analysis': 'extend',
        'code': 'not_a_representation',
        'detail': 'The extend analysis needs a representation block',
    }]


@pytest.mark.parametrize('raw', [
    {'analyses': ['roots']},
    {'analyses': ['unknown']},
    {'analyses': ['pcf']},
    {'algebra': {'kind': 'sl'}, 'abelian': {'generators': [SL3_DIAGONAL]}},
    {'algebra': {'kind': 'sl', 'n': 2}, 'abelian': {'generators': [SL3_DIAGONAL]}},
    {'algebra': {'kind': 'sl', 'n': 3}, 'abelian': {'generators': [[[1, 0], [0, 1, 2]]]}},
    {'algebra': {'kind': 'sl', 'n': 3}, 'abelian': {'generators': [[['1/0', 0], [0, 0]]]}},
])
def test_malformed_scenarios(raw):
    with pytest.raises(ScenarioParseError) as exc:
        run_scenario(raw)
    assert exc.value.code == 'parse_error'


def test_rational_entries_are_accepted():
    data = parse_scenario(sl3_scenario([[['1/2', 0, 0], [0, [1, 2], 0], [0, 0, -1]]]))
    assert str(data['abelian']['generators'][0][0][0]) == '1/2'


def test_load_scenario_errors(tmp_path):
    broken = tmp_path / 'broken.json'
    broken.write_text('{"name": ')
    with pytest.raises(ScenarioParseError, match='not valid JSON'):
        load_scenario(broken)
    with pytest.raises(ScenarioParseError, match='Cannot read'):
        load_scenario(tmp_path / 'missing.json')
    listing = tmp_path / 'list.json'
    listing.write_text('[]')
    with pytest.raises(ScenarioParseError, match='JSON object'):
        load_scenario(listing)


def test_scenario_hash_ignores_key_order():
    assert scenario_hash({'a': 1, 'b': [1, 2]}) == scenario_hash({'b': [1, 2], 'a': 1})
    assert scenario_hash({'a': 1}) != scenario_hash({'a': 2})


def test_reports_are_deterministic():
    raw = sl3_scenario([SL3_DIAGONAL], analyses=['roots', 'chambers', 'detect', 'rigidity'])
    first, second = run_scenario(raw).report, run_scenario(raw).report
    assert emit_json(first) == emit_json(second)
    assert emit_text(first) == emit_text(second)


def test_json_report_is_canonical():
    report = normalize(run_scenario(sl3_scenario([SL3_DIAGONAL])).report)
    rendered = emit_json(report)
    assert rendered.endswith('}\n')
    assert json.loads(rendered) == report
    assert rendered == json.dumps(report, sort_keys=True, indent=2) + '\n'


def test_text_report_lists_failures():
    report = run_scenario(sl3_scenario([SL3_DIAGONAL, SL3_E12])).report
    text = emit_text(report)
    assert text.startswith('Scenario: sl3-test\n')
    assert 'Failures (1):' in text
    assert 'roots: not_abelian' in text


@pytest.mark.parametrize('name', [
    'sl4_jordan_example',
    'sl_dm_embedding',
    'sl2_heisenberg_extension',
    'cat_map_coboundary',
])
def test_shipped_scenarios_match_golden(name):
    expected = golden(name)
    outcome = run_scenario_file(shipped(name))
    report = normalize(outcome.report)
    assert outcome.exit_code == expected['exit_code']
    for path, value in expected['values'].items():
        assert lookup(report, path) == value, path


@pytest.mark.parametrize('name', ['sl_dm_embedding', 'sl2_heisenberg_extension', 'cat_map_coboundary'])
def test_shipped_scenarios_are_byte_identical_across_runs(name):
    first = emit_json(run_scenario_file(shipped(name)).report)
    second = emit_json(run_scenario_file(shipped(name)).report)
    assert first == second


def test_undefined_function_in_cocycle_is_a_parse_error():
    raw = {
        'name': 'undefined-function',
        'pcf': {
            'generators': [[[2, 1], [1, 1]]],
            'cocycle': {'kind': 'expression', 'components': [['foo(x1)']]},
        },
        'analyses': ['pcf'],
    }
    with pytest.raises(ScenarioParseError, match='Unknown functions'):
        run_scenario(raw)


def test_unexpected_exceptions_become_failures(monkeypatch):
    def broken(ctx):
        raise ValueError('lost precision')

    monkeypatch.setitem(runner.RUNNERS, 'roots', broken)
    outcome = run_scenario(sl3_scenario([SL3_DIAGONAL], analyses=['roots', 'chambers']))
    assert outcome.exit_code == EXIT_FAILURES
    assert outcome.failures == [{
        'analysis': 'roots',
        'code': 'analysis_failure',
        'detail': 'ValueError: lost precision',
    }]
    assert list(outcome.report['analyses']) == ['chambers']
