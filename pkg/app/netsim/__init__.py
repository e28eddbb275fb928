"""
Network simulator: bottleneck link, GBR/NGBR scheduling, KPI measurement.
"""

from app.netsim.engine import EventQueue, LinkSimulator, run
from app.netsim.export import records_to_json, write_flows_csv, write_packets_csv
from app.netsim.metrics import measure, measure_windows
from app.netsim.scenarios import scenario

__all__ = [
    "EventQueue",
    "LinkSimulator",
    "measure",
    "measure_windows",
    "records_to_json",
    "run",
    "scenario",
    "write_flows_csv",
    "write_packets_csv",
]
