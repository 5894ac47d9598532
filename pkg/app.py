"""Streamlit viewer for suite reports

- load JSON reports from uploads or the certificate directory
- run a registered suite with the default configuration
- filter, page through and download assertion rows
"""
import json
from pathlib import Path

import streamlit as st
import pandas as pd

from config.loader import HarnessConfig, cache_dir
from harness.suites import run_suite, suite_names
from ui.statistics import display_statistics
from ui.assertion_card import display_assertion_card
from ui.pagination import display_pagination, get_page
from ui.filters import display_filters, apply_filters
from utils.export import COLUMNS, load_report


def init_session_state():
    defaults = {
        'reports': {},
        'current_page': 1,
        'rows_per_page': 10,
        'last_filter_count': 0,
    }
    for key, value in defaults.items():
        if key not in st.session_state:
            st.session_state[key] = value


def add_report(data: dict, source: str):
    if not isinstance(data, dict) or 'suite' not in data or 'rows' not in data:
        st.error(f"{source} is not a suite report")
        return
    st.session_state.reports[f"{data['suite']} ({source})"] = data


def display_sidebar():
    with st.sidebar:
        st.header("Reports")

        uploads = st.file_uploader("Suite report (JSON)", type=['json'], accept_multiple_files=True)
        for upload in uploads or []:
            try:
                add_report(json.loads(upload.getvalue()), upload.name)
            except ValueError as e:
                st.error(f"Could not parse {upload.name}: {e}")

        directory = cache_dir()
        if directory and st.button("Load certificate directory", use_container_width=True):
            found = sorted(Path(directory).glob('*.json'))
            for path in found:
                try:
                    add_report(json.loads(path.read_text(encoding='utf-8')), path.name)
                except ValueError as e:
                    st.warning(f"Skipped {path.name}: {e}")
            st.info(f"Read {len(found)} file(s) from {directory}")

        st.divider()
        st.subheader("Run a suite")
        name = st.selectbox("Suite", suite_names())
        if st.button("Run", type="primary", use_container_width=True):
            with st.spinner(f"Running {name}..."):
                try:
                    report = run_suite(name, HarnessConfig())
                    add_report(report.to_dict(), 'this session')
                    st.success(f"{name}: {report.summary()['passed']}/{report.summary()['total']} passed")
                except Exception as e:
                    st.error(f"Suite failed to run: {e}")

        if st.session_state.reports:
            st.divider()
            with st.expander(f"Loaded ({len(st.session_state.reports)})"):
                for key, data in st.session_state.reports.items():
                    st.write(f"{key}: {data.get('status', '?')}")
            if st.button("Clear", use_container_width=True):
                st.session_state.reports = {}
                st.rerun()


def display_results():
    frames = [load_report(data) for data in st.session_state.reports.values()]
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=COLUMNS)

    display_statistics(frame)
    st.divider()

    suite_filter, status_filter, text = display_filters(frame)
    filtered = apply_filters(frame, suite_filter, status_filter, text)
    if st.session_state.last_filter_count != len(filtered):
        st.session_state.current_page = 1
        st.session_state.last_filter_count = len(filtered)
    st.write(f"**Showing {len(filtered)} of {len(frame)} assertions**")

    st.session_state.rows_per_page = st.selectbox("Rows per page", [5, 10, 20, 50], index=1)
    st.divider()

    if len(filtered):
        page = display_pagination(len(filtered), st.session_state.rows_per_page, key='top')
        rows, start = get_page(filtered, page, st.session_state.rows_per_page)
        for idx, (_, row) in enumerate(rows.iterrows(), start=start + 1):
            display_assertion_card(row, idx)
        st.divider()
        display_pagination(len(filtered), st.session_state.rows_per_page, key='bottom')
    else:
        st.warning("No assertions match the current filters.")

    st.divider()
    st.header("Export")
    col1, col2 = st.columns(2)
    with col1:
        st.download_button("Download CSV", filtered.to_csv(index=False).encode('utf-8'),
                           file_name="assertions.csv", mime="text/csv", use_container_width=True)
    with col2:
        payload = json.dumps(list(st.session_state.reports.values()), indent=2, sort_keys=True)
        st.download_button("Download JSON", payload, file_name="reports.json",
                           mime="application/json", use_container_width=True)


def main():
    st.set_page_config(page_title="Iw Norm Workbench", layout="wide")
    init_session_state()
    st.title("Iw Norm Workbench")
    st.caption("Exact norm certificates for Schreier-type norming sets")
    display_sidebar()
    if not st.session_state.reports:
        st.info("Upload a suite report or run a suite from the sidebar.")
        return
    display_results()


if __name__ == "__main__":
    main()
