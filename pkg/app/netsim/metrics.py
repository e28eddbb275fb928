"""
KPI measurement of simulated flows.

- latency: atraso médio fim a fim dos pacotes entregues
- jitter: média das diferenças absolutas entre atrasos consecutivos
- per: descartados / enviados
"""

import logging
from typing import Optional, Sequence

import numpy as np

from app.core.exceptions import EmptyRecord
from app.schemas import FlowRecord, KpiMeasurement, PacketRecord

logger = logging.getLogger(__name__)


def _statistics(
    intent_id: str,
    packets: Sequence[PacketRecord],
    window_start_ms: Optional[float] = None,
    window_end_ms: Optional[float] = None,
) -> KpiMeasurement:
    delays = np.array([p.delay_ms for p in packets if not p.dropped], dtype=float)
    sent = len(packets)

    latency: Optional[float] = None
    jitter: Optional[float] = None
    if delays.size:
        latency = float(delays.mean())
        jitter = float(np.abs(np.diff(delays)).mean()) if delays.size > 1 else 0.0

    return KpiMeasurement(
        intent_id=intent_id,
        latency_ms=latency,
        jitter_ms=jitter,
        per_observed=(sent - int(delays.size)) / sent,
        samples=int(delays.size),
        sent=sent,
        window_start_ms=window_start_ms,
        window_end_ms=window_end_ms,
    )


def measure(record: FlowRecord) -> KpiMeasurement:
    """
    Calcula os KPIs observados de um fluxo.

    Args:
        record: Registro do fluxo

    Returns:
        KpiMeasurement: Sem pacotes entregues, latência e jitter ficam None
        (não observáveis) e per_observed = 1

    Raises:
        EmptyRecord: Nenhum pacote enviado

    Example:
        >>> measure(record).latency_ms
        5.04
    """
    if not record.packets:
        raise EmptyRecord(f"fluxo {record.intent_id} sem pacotes enviados")

    measurement = _statistics(record.intent_id, record.packets)
    logger.info(
        f"{record.intent_id}: latência={measurement.latency_ms} ms, "
        f"jitter={measurement.jitter_ms} ms, per={measurement.per_observed}"
    )
    return measurement


def measure_windows(record: FlowRecord, interval_ms: float) -> list[KpiMeasurement]:
    """
    Mede o fluxo em janelas consecutivas de envio (modo de relatório periódico).

    Janelas sem pacotes enviados são omitidas.

    Raises:
        EmptyRecord: Nenhum pacote enviado
        ValueError: Intervalo não positivo
    """
    if not record.packets:
        raise EmptyRecord(f"fluxo {record.intent_id} sem pacotes enviados")
    if interval_ms <= 0:
        raise ValueError("interval_ms deve ser positivo")

    windows: dict[int, list[PacketRecord]] = {}
    for packet in record.packets:
        windows.setdefault(int(packet.send_ms // interval_ms), []).append(packet)

    return [
        _statistics(record.intent_id, packets, index * interval_ms, (index + 1) * interval_ms)
        for index, packets in sorted(windows.items())
    ]
