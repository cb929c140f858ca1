"""Rendering helpers for run reports."""

from domdim.app.components.reports import (
    dataframe_to_csv,
    dd_histogram,
    render_histogram,
    render_report,
    render_resolution,
    report_frame,
    summarize_verdicts,
)

__all__ = [
    "dataframe_to_csv",
    "dd_histogram",
    "render_histogram",
    "render_report",
    "render_resolution",
    "report_frame",
    "summarize_verdicts",
]
