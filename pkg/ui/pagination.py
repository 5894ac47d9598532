"""Pagination component"""

import math
from typing import Tuple

import streamlit as st
import pandas as pd


def display_pagination(total_rows: int, rows_per_page: int, key: str = 'bottom') -> int:
    """First/prev/next/last controls over st.session_state.current_page"""
    total_pages = max(1, math.ceil(total_rows / rows_per_page))
    st.session_state.current_page = min(st.session_state.current_page, total_pages)
    if total_pages == 1:
        return 1

    page = st.session_state.current_page
    col1, col2, col3, col4, col5 = st.columns([1, 1, 2, 1, 1])
    moves = [
        (col1, "First", 1, page == 1),
        (col2, "Prev", page - 1, page == 1),
        (col4, "Next", page + 1, page == total_pages),
        (col5, "Last", total_pages, page == total_pages),
    ]
    for col, label, target, disabled in moves:
        with col:
            if st.button(label, key=f"{label}-{key}", disabled=disabled):
                st.session_state.current_page = target
                st.rerun()
    with col3:
        st.write(f"Page {page} of {total_pages} ({total_rows} rows)")
    return page


def get_page(frame: pd.DataFrame, page: int, rows_per_page: int) -> Tuple[pd.DataFrame, int]:
    start = (page - 1) * rows_per_page
    return frame.iloc[start:start + rows_per_page], start
