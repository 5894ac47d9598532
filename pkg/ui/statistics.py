"""Summary metrics for loaded suite reports"""

import streamlit as st
import pandas as pd


def display_statistics(frame: pd.DataFrame):
    """Totals over all rows, then a per-suite breakdown"""
    total = len(frame)
    passed = int((frame['status'] == 'pass').sum()) if total else 0
    failed = int((frame['status'] == 'fail').sum()) if total else 0
    measured = total - passed - failed

    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Assertions", total)
    with col2:
        st.metric("Passed", passed)
    with col3:
        st.metric("Failed", failed, help="Rows whose exact comparison did not hold")
    with col4:
        decided = passed + failed
        rate = f"{100 * passed / decided:.1f}%" if decided else "N/A"
        st.metric("Pass rate", rate, help=f"{measured} measured rows are not counted")

    suites = frame.groupby('suite')['status'].value_counts().unstack(fill_value=0) if total else None
    if suites is not None and len(suites) > 1:
        st.divider()
        st.subheader("By suite")
        cols = st.columns(len(suites))
        for idx, (name, counts) in enumerate(suites.iterrows()):
            with cols[idx]:
                st.metric(name, int(counts.get('pass', 0)), delta=-int(counts.get('fail', 0)) or None)
