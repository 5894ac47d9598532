"""Assertion card display component"""

import json

import streamlit as st

STATUS_COLORS = {'pass': '#90EE90', 'fail': '#F08080', 'measured': '#ADD8E6'}


def display_assertion_card(row, index: int):
    """One assertion row with its certificate"""
    color = STATUS_COLORS.get(row['status'], '#FFFFFF')
    with st.expander(f"#{index} [{row['suite']}] {row['claim']} - {row['status'].upper()}", expanded=False):
        st.markdown(f"""
        <div style="background-color: {color}; padding: 10px; border-radius: 5px; margin-bottom: 15px;">
            <h4 style="margin: 0;">{row['instance']}</h4>
        </div>
        """, unsafe_allow_html=True)

        if row['relation'] != 'holds':
            col1, col2, col3 = st.columns([2, 1, 2])
            with col1:
                st.write("**LHS**")
                st.code(row['lhs'])
            with col2:
                st.write("**Relation**")
                st.code(row['relation'])
            with col3:
                st.write("**RHS**")
                st.code(row['rhs'])
        if row.get('note'):
            st.caption(row['note'])

        with st.expander("Certificate"):
            try:
                st.json(json.loads(row['certificate']))
            except (TypeError, ValueError):
                st.code(str(row['certificate']))
