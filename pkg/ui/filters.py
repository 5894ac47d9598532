"""Filter components"""

from typing import List, Tuple

import streamlit as st
import pandas as pd

from harness.report import STATUSES


def display_filters(frame: pd.DataFrame) -> Tuple[List[str], List[str], str]:
    """Suite, status and free-text filters"""
    col1, col2, col3 = st.columns(3)

    with col1:
        suite_options = sorted(frame['suite'].unique()) if len(frame) else []
        suite_filter = st.multiselect("Filter by suite", suite_options, default=suite_options)

    with col2:
        status_filter = st.multiselect("Filter by status", list(STATUSES), default=list(STATUSES))

    with col3:
        text = st.text_input("Instance or claim contains", "")

    return suite_filter, status_filter, text


def apply_filters(frame: pd.DataFrame, suite_filter: List[str], status_filter: List[str], text: str) -> pd.DataFrame:
    mask = frame['suite'].isin(suite_filter) & frame['status'].isin(status_filter)
    if text:
        needle = text.lower()
        mask &= (frame['instance'].str.lower().str.contains(needle, regex=False)
                 | frame['claim'].str.lower().str.contains(needle, regex=False))
    return frame[mask]
