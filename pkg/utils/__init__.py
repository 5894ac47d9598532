"""Utilities package"""

from .export import export_to_csv, export_to_json, export_to_xlsx, report_emit, report_frame, load_report

__all__ = ['export_to_csv', 'export_to_json', 'export_to_xlsx', 'report_emit', 'report_frame', 'load_report']
