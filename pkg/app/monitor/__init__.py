"""
Intent monitoring: compliance verdicts, ICM reports and lifecycle feedback.
"""

from app.monitor.compliance import format_value, judge, parse_value, quantize, verdict
from app.monitor.reports import (
    expectation_report,
    extract_verdicts,
    feedback,
    intent_report,
    read_report,
    report_summary,
    state_event_of,
)

__all__ = [
    "expectation_report",
    "extract_verdicts",
    "feedback",
    "format_value",
    "intent_report",
    "judge",
    "parse_value",
    "quantize",
    "read_report",
    "report_summary",
    "state_event_of",
    "verdict",
]
