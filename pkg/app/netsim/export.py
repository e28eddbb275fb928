"""
Export of simulation records (CSV for plotting, JSON).
"""

import csv
import json
import logging
from pathlib import Path
from typing import Mapping

from app.schemas import FlowRecord, KpiMeasurement

logger = logging.getLogger(__name__)

PACKET_COLUMNS = ["intent_id", "service", "seq", "send_ms", "deliver_ms", "delay_ms", "size_bytes", "dropped"]
FLOW_COLUMNS = [
    "intent_id", "service", "resource", "priority", "sent", "delivered", "dropped",
    "latency_ms", "jitter_ms", "per_observed",
]


def _cell(value: object) -> object:
    return "" if value is None else value


def write_packets_csv(records: Mapping[str, FlowRecord], path: Path) -> Path:
    """Uma linha por pacote, fluxos na ordem do mapa."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(PACKET_COLUMNS)
        for record in records.values():
            for packet in record.packets:
                writer.writerow([
                    record.intent_id,
                    record.service,
                    packet.seq,
                    packet.send_ms,
                    _cell(packet.deliver_ms),
                    _cell(packet.delay_ms),
                    packet.size_bytes,
                    int(packet.dropped),
                ])
    logger.info(f"CSV de pacotes salvo em {path}")
    return path


def write_flows_csv(
    records: Mapping[str, FlowRecord],
    measurements: Mapping[str, KpiMeasurement],
    path: Path,
) -> Path:
    """Uma linha por fluxo com os KPIs medidos."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(FLOW_COLUMNS)
        for intent_id, record in records.items():
            measurement = measurements[intent_id]
            writer.writerow([
                intent_id,
                record.service,
                record.resource.value,
                record.priority,
                record.sent,
                record.delivered,
                record.dropped,
                _cell(measurement.latency_ms),
                _cell(measurement.jitter_ms),
                measurement.per_observed,
            ])
    logger.info(f"CSV de fluxos salvo em {path}")
    return path


def records_to_json(
    records: Mapping[str, FlowRecord],
    measurements: Mapping[str, KpiMeasurement],
) -> str:
    """Registros e medições em um único documento JSON."""
    document = {
        intent_id: {
            "record": record.model_dump(mode="json"),
            "measurement": measurements[intent_id].model_dump(mode="json"),
        }
        for intent_id, record in records.items()
    }
    return json.dumps(document, indent=2)
