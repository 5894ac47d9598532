"""Pure helpers behind the report viewer"""

import pandas as pd

from ui.filters import apply_filters
from ui.pagination import get_page
from utils.export import COLUMNS


def _frame():
    rows = [
        ['schedule', 'default schedule', 'n_3', '18', '==', '18', 'pass', '', ''],
        ['schedule', 'broken schedule', 'rejected', '1', '==', '1', 'fail', '', ''],
        ['tilde', 'j0=1', 'lower bound', '1', '>=', '1', 'pass', '', ''],
    ]
    return pd.DataFrame(rows, columns=COLUMNS)


def test_apply_filters_by_suite_and_status():
    frame = _frame()
    kept = apply_filters(frame, ['schedule'], ['pass'], '')
    assert list(kept['instance']) == ['default schedule']


def test_apply_filters_by_text():
    frame = _frame()
    kept = apply_filters(frame, ['schedule', 'tilde'], ['pass', 'fail'], 'BROKEN')
    assert list(kept['claim']) == ['rejected']
    assert len(apply_filters(frame, ['schedule', 'tilde'], ['pass', 'fail'], 'lower')) == 1


def test_get_page():
    page, start = get_page(_frame(), 2, 2)
    assert start == 2
    assert list(page['suite']) == ['tilde']
