"""
Discrete-event simulation of the bottleneck link.

Topologia: fontes (uma por intenção) -> escalonador -> enlace -> destino.

- Cada intenção é uma fonte de pacotes a intervalo constante.
- Fluxos GBR são conformados na taxa garantida (relógio virtual) e, quando
  elegíveis, têm precedência estrita sobre os NGBR.
- Fluxos NGBR dividem a capacidade residual por prioridade (menor número
  primeiro), FIFO dentro de cada fila.
- Transmissão não preemptiva; descartes por fila cheia ou por perda no
  enlace (loss_model) são registrados como pacotes sem entrega.

Apenas os sorteios de perda consomem o gerador semeado, na ordem de
transmissão, então (config, intenções) iguais geram registros idênticos.
"""

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np

from app.core.config import build_sim_config, settings
from app.core.exceptions import InvalidConfig
from app.models import ResourceKind
from app.schemas import FlowRecord, NetworkIntent, PacketRecord, SimConfig

logger = logging.getLogger(__name__)

# Ordem de processamento de eventos no mesmo instante
TX_END = 0
ARRIVAL = 1
ELIGIBLE = 2


class EventQueue:
    """
    Fila de eventos ordenada por (instante, tipo, ordem de agendamento).

    Example:
        >>> events = EventQueue()
        >>> events.schedule(5.0, ARRIVAL, (0, 0))
        >>> events.pop()
        (5.0, 1, 0, (0, 0))
    """

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, int, Any]] = []
        self._ids = itertools.count()
        self.now = 0.0
        self.total_simulated = 0

    def has_events(self) -> bool:
        return len(self._heap) > 0

    def next_time(self) -> float:
        return self._heap[0][0]

    def schedule(self, time: float, kind: int, payload: Any = None) -> None:
        heapq.heappush(self._heap, (time, kind, next(self._ids), payload))

    def pop(self) -> tuple[float, int, int, Any]:
        event = heapq.heappop(self._heap)
        self.now = event[0]
        self.total_simulated += 1
        return event


@dataclass
class _Flow:
    """Estado mutável de um fluxo durante a execução."""

    index: int
    intent: NetworkIntent
    packet_bytes: int
    interval_ms: float
    rate_bps: Optional[float]
    queue: deque = field(default_factory=deque)
    vclock_ms: float = 0.0
    send_ms: list[float] = field(default_factory=list)
    deliver_ms: list[Optional[float]] = field(default_factory=list)

    @property
    def gbr(self) -> bool:
        return self.intent.resource is ResourceKind.GBR

    def key(self) -> tuple[int, int, int]:
        return (0 if self.gbr else 1, self.intent.priority, self.index)


class LinkSimulator:
    """
    Simulador de um enlace gargalo com escalonador GBR/NGBR.

    Args:
        config: Configuração validada
        intents: Intenções de rede implantadas (uma fonte por intenção)
    """

    def __init__(self, config: SimConfig, intents: Sequence[NetworkIntent]) -> None:
        self.config = config
        self.events = EventQueue()
        self.rng = np.random.default_rng(config.seed)
        self.busy = False
        self.flows = [self._make_flow(index, intent) for index, intent in enumerate(intents)]
        self._duration_ms = config.duration_s * 1000.0

    def _make_flow(self, index: int, intent: NetworkIntent) -> _Flow:
        profile = self.config.flow_profiles.get(intent.service)
        base_bytes = (profile.packet_bytes if profile else None) or self.config.base_packet_bytes
        interval = (profile.interval_ms if profile else None) or self.config.packet_interval_ms

        rate: Optional[float] = None
        # GBR nunca passa da taxa reservada, mesmo com o enlace ocioso: o excesso
        # espera no relógio virtual. É isso que degrada ConvVideo e ProcessMonitor
        # no cenário congestionado.
        if intent.resource is ResourceKind.GBR:
            rate = float(intent.gbr_rate_bps or settings.default_gbr_rate_bps)

        return _Flow(
            index=index,
            intent=intent,
            packet_bytes=max(1, round(base_bytes * self.config.congestion_factor)),
            interval_ms=float(interval),
            rate_bps=rate,
        )

    # ==================== Eventos ====================

    def _on_arrival(self, flow: _Flow, seq: int) -> None:
        now = self.events.now
        flow.send_ms.append(now)
        flow.deliver_ms.append(None)

        if len(flow.queue) >= self.config.queue_limit_pkts:
            logger.debug(f"{flow.intent.intent_id}: pacote {seq} descartado (fila cheia)")
        else:
            eligible = now
            if flow.rate_bps is not None:
                eligible = max(now, flow.vclock_ms)
                flow.vclock_ms = eligible + flow.packet_bytes * 8 / flow.rate_bps * 1000.0
            flow.queue.append((seq, eligible))
            if eligible > now:
                self.events.schedule(eligible, ELIGIBLE)

        following = (seq + 1) * flow.interval_ms
        if following < self._duration_ms:
            self.events.schedule(following, ARRIVAL, (flow.index, seq + 1))

    def _on_tx_end(self, flow: _Flow, seq: int, lost: bool) -> None:
        self.busy = False
        if not lost:
            flow.deliver_ms[seq] = self.events.now + self.config.prop_delay_ms

    def _dispatch(self) -> None:
        """Inicia a próxima transmissão se o enlace estiver livre."""
        now = self.events.now
        ready = [flow for flow in self.flows if flow.queue and flow.queue[0][1] <= now]
        if self.busy or not ready:
            return

        flow = min(ready, key=_Flow.key)
        seq, _ = flow.queue.popleft()
        tx_ms = flow.packet_bytes * 8 / self.config.link_capacity_bps * 1000.0
        lost = self.config.loss_model > 0 and self.rng.random() < self.config.loss_model
        self.busy = True
        self.events.schedule(now + tx_ms, TX_END, (flow.index, seq, lost))

    # ==================== Execução ====================

    def run(self) -> dict[str, FlowRecord]:
        for flow in self.flows:
            self.events.schedule(0.0, ARRIVAL, (flow.index, 0))

        while self.events.has_events():
            now = self.events.next_time()
            # Todos os eventos do instante antes de escalonar
            while self.events.has_events() and self.events.next_time() == now:
                _, kind, _, payload = self.events.pop()
                if kind == ARRIVAL:
                    self._on_arrival(self.flows[payload[0]], payload[1])
                elif kind == TX_END:
                    flow_index, seq, lost = payload
                    self._on_tx_end(self.flows[flow_index], seq, lost)
            self._dispatch()

        return {flow.intent.intent_id: self._record(flow) for flow in self.flows}

    def _record(self, flow: _Flow) -> FlowRecord:
        packets = [
            PacketRecord(seq=seq, send_ms=send, deliver_ms=deliver, size_bytes=flow.packet_bytes)
            for seq, (send, deliver) in enumerate(zip(flow.send_ms, flow.deliver_ms))
        ]
        return FlowRecord(
            intent_id=flow.intent.intent_id,
            service=flow.intent.service,
            priority=flow.intent.priority,
            resource=flow.intent.resource,
            packets=packets,
        )


def run(
    config: Union[SimConfig, Mapping[str, Any]],
    intents: Sequence[NetworkIntent],
) -> dict[str, FlowRecord]:
    """
    Executa a simulação das intenções implantadas.

    Args:
        config: SimConfig ou dicionário equivalente
        intents: Intenções de rede admitidas

    Returns:
        dict[str, FlowRecord]: Registro por intent_id, na ordem das intenções

    Raises:
        InvalidConfig: Configuração inválida ou intent_id repetido

    Example:
        >>> records = run(load_sim_config(), [network_intent])
        >>> records["I-ConvVideo-1"].sent
        100
    """
    if not isinstance(config, SimConfig):
        config = build_sim_config(dict(config))

    seen: set[str] = set()
    for intent in intents:
        if intent.intent_id in seen:
            raise InvalidConfig("intents", f"intent_id repetido: {intent.intent_id}")
        seen.add(intent.intent_id)

    if not intents:
        return {}

    simulator = LinkSimulator(config, intents)
    records = simulator.run()
    logger.info(
        f"Simulação concluída: {len(records)} fluxos, "
        f"{simulator.events.total_simulated} eventos, fator de congestionamento {config.congestion_factor}"
    )
    return records
