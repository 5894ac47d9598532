"""Verification suites and their reports"""

from .report import AssertionRow, SuiteReport
from .suites import SUITES, run_suite, suite_names

__all__ = ['AssertionRow', 'SuiteReport', 'SUITES', 'run_suite', 'suite_names']
