"""Export utilities"""

import io
import json
import os
from typing import Any, Dict, List, Optional

import pandas as pd

from harness.report import SuiteReport

COLUMNS = ['suite', 'instance', 'claim', 'lhs', 'relation', 'rhs', 'status', 'note', 'certificate']
FORMATS = ('json', 'csv', 'xlsx')


def report_rows(report: SuiteReport) -> List[Dict[str, Any]]:
    rows = []
    for row in report.rows:
        data = row.to_dict()
        data['suite'] = report.suite
        data['certificate'] = json.dumps(data['certificate'], sort_keys=True)
        rows.append(data)
    return rows


def report_frame(report: SuiteReport) -> pd.DataFrame:
    """Assertion rows with a fixed column order"""
    return pd.DataFrame(report_rows(report), columns=COLUMNS)


def export_to_csv(report: SuiteReport) -> bytes:
    return report_frame(report).to_csv(index=False).encode('utf-8')


def export_to_json(report: SuiteReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def export_to_xlsx(report: SuiteReport) -> bytes:
    buffer = io.BytesIO()
    with pd.ExcelWriter(buffer, engine='openpyxl') as writer:
        report_frame(report).to_excel(writer, sheet_name='assertions', index=False)
        pd.DataFrame([report.summary()]).to_excel(writer, sheet_name='summary', index=False)
    return buffer.getvalue()


def report_emit(report: SuiteReport, fmt: str = 'json', path: Optional[str] = None) -> bytes:
    """Serialise a report and optionally write it to path"""
    if fmt == 'json':
        payload = export_to_json(report).encode('utf-8')
    elif fmt == 'csv':
        payload = export_to_csv(report)
    elif fmt == 'xlsx':
        payload = export_to_xlsx(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}, expected one of {', '.join(FORMATS)}")
    if path:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'wb') as fh:
            fh.write(payload)
    return payload


def load_report(data: Dict[str, Any]) -> pd.DataFrame:
    """Assertion table from a JSON report, for the viewer"""
    rows = []
    for row in data.get('rows', []):
        flat = dict(row)
        flat['suite'] = data.get('suite', '')
        flat['certificate'] = json.dumps(flat.get('certificate', {}), sort_keys=True)
        rows.append(flat)
    return pd.DataFrame(rows, columns=COLUMNS)
