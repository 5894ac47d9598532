import io
import json
from fractions import Fraction

import pandas as pd
import pytest

from harness.report import AssertionRow, SuiteReport, check, holds, measure
from utils.export import COLUMNS, export_to_csv, export_to_xlsx, load_report, report_emit, report_frame


@pytest.fixture
def report():
    rep = SuiteReport('demo', {'samples': 2})
    rep.add(check('x=e2', 'norm == 1', Fraction(1), '==', 1, {'witness': 'e2*'}))
    rep.add(check('x=e3', 'norm <= 1/2', Fraction(1), '<=', Fraction(1, 2), note='too big'))
    rep.add(holds('schedule', 'valid', True))
    return rep


def test_check_decides_exactly():
    assert check('i', 'c', Fraction(1, 3), '<', Fraction(1, 2)).ok
    assert not check('i', 'c', 1, '>=', 2).ok
    with pytest.raises(ValueError):
        AssertionRow('i', 'c', None, '~', None, True)


def test_report_summary(report):
    assert not report.ok
    assert report.summary() == {'total': 3, 'passed': 2, 'failed': 1, 'measured': 0}
    assert [r.instance for r in report.failures] == ['x=e3']
    data = report.to_dict()
    assert data['status'] == 'fail'
    assert data['rows'][1]['lhs'] == '1/1'
    assert data['rows'][1]['rhs'] == '1/2'
    assert data['rows'][2]['lhs'] is None
    assert set(data['meta']) == {'created', 'runtime_seconds'}


def test_csv_has_one_row_per_assertion(report):
    frame = pd.read_csv(io.BytesIO(export_to_csv(report)))
    assert list(frame.columns) == COLUMNS
    assert len(frame) == 3
    assert list(frame['status']) == ['pass', 'fail', 'pass']


def test_empty_report_gives_a_header_only_csv():
    text = export_to_csv(SuiteReport('empty', {})).decode('utf-8')
    assert text.strip() == ','.join(COLUMNS)


def test_json_emit_and_reload(report, tmp_path):
    path = tmp_path / 'out' / 'demo.json'
    payload = report_emit(report, 'json', str(path))
    assert path.read_bytes() == payload
    frame = load_report(json.loads(payload))
    assert frame.equals(report_frame(report))


def test_xlsx_sheets(report):
    sheets = pd.read_excel(io.BytesIO(export_to_xlsx(report)), sheet_name=None, engine='openpyxl')
    assert set(sheets) == {'assertions', 'summary'}
    assert len(sheets['assertions']) == 3
    assert int(sheets['summary']['failed'][0]) == 1


def test_unknown_format(report):
    with pytest.raises(ValueError):
        report_emit(report, 'yaml')


def test_measured_rows_never_fail_the_report(report):
    rep = SuiteReport('demo', {})
    rep.add(check('x', 'norm <= 1', 1, '<=', 1))
    row = rep.add(measure('x', 'norm <= 1/2', 1, '<=', Fraction(1, 2)))
    assert row.status == 'measured'
    assert row.certificate['comparison_holds'] is False
    assert rep.ok
    assert rep.summary() == {'total': 2, 'passed': 1, 'failed': 0, 'measured': 1}
    assert rep.to_dict()['rows'][1]['status'] == 'measured'
