"""
Intent orchestrator.

Este módulo encadeia o fluxo completo de uma execução:
1. Reconhece o serviço pedido em cada intenção do usuário
2. Cria a intenção de serviço (template ICM) e a intenção de rede
3. Valida os recursos (GBR) e implanta as intenções admitidas
4. Simula as intenções implantadas em um único enlace
5. Mede e julga os KPIs de cada fluxo
6. Gera os relatórios de intenção e aplica o evento ao ciclo de vida
"""

import logging
import traceback
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from app.knowledge.catalog import Catalog
from app.models import StateEvent
from app.monitor.compliance import judge
from app.monitor.reports import expectation_report, feedback, intent_report, report_summary
from app.netsim.engine import run as run_simulation
from app.netsim.export import records_to_json, write_flows_csv, write_packets_csv
from app.netsim.metrics import measure, measure_windows
from app.pipeline.intents import (
    IntentIdGenerator,
    build_network_intent,
    build_service_intent,
    network_intent_to_json,
    network_intent_to_turtle,
)
from app.pipeline.lifecycle import apply_event
from app.pipeline.recognizer import recognize
from app.pipeline.validation import initial_state, validate
from app.rdf.turtle import serialize_turtle
from app.schemas import (
    Conflict,
    FlowRecord,
    IntentReport,
    KpiMeasurement,
    NetworkIntent,
    ResourceState,
    ServiceIntent,
    SimConfig,
    UserIntent,
)

logger = logging.getLogger(__name__)


@dataclass
class Deployment:
    """
    Resultado da implantação de uma intenção.

    Attributes:
        user_intent: Intenção reconhecida
        service_intent: Intenção de serviço (grafo ICM)
        network_intent: Intenção de rede (estado atualizado pelos relatórios)
        conflict: Motivo da rejeição na validação (None = admitida)
    """

    user_intent: UserIntent
    service_intent: ServiceIntent
    network_intent: NetworkIntent
    conflict: Optional[str] = None

    @property
    def admitted(self) -> bool:
        return self.conflict is None


@dataclass
class RunResult:
    """Artefatos de uma execução completa."""

    deployments: list[Deployment]
    records: dict[str, FlowRecord] = field(default_factory=dict)
    measurements: dict[str, KpiMeasurement] = field(default_factory=dict)
    reports: dict[str, IntentReport] = field(default_factory=dict)
    periodic: dict[str, list[IntentReport]] = field(default_factory=dict)

    @property
    def degraded(self) -> list[str]:
        return [
            intent_id
            for intent_id, report in self.reports.items()
            if report.state_event is StateEvent.STATE_DEGRADES
        ]


class IntentOrchestrator:
    """
    Orquestrador das intenções de uma execução.

    Attributes:
        catalog: Catálogo de serviços consultado
        config: Configuração do simulador (cenário já aplicado)
        state: Estado de recursos do enlace
        ids: Gerador de identificadores de intenção

    Example:
        >>> orchestrator = IntentOrchestrator(load_builtin(), load_sim_config())
        >>> result = orchestrator.run(["ConvVideo", "McpttData"])
        >>> result.degraded
        []
    """

    def __init__(self, catalog: Catalog, config: SimConfig) -> None:
        self.catalog = catalog
        self.config = config
        self.state: ResourceState = initial_state(config.link_capacity_bps)
        self.ids = IntentIdGenerator()

    def process(self, text: str) -> Deployment:
        """
        Processa uma intenção do usuário até a validação de recursos.

        Raises:
            NoServiceRecognized / AmbiguousIntent: Texto sem serviço único
            UnknownService / UnknownKpi: Catálogo sem os dados do serviço
        """
        user_intent = recognize(text, self.catalog)
        intent_id = self.ids.next(user_intent.recognized_service)
        service_intent = build_service_intent(user_intent, self.catalog, intent_id)
        network_intent = build_network_intent(service_intent, self.catalog)

        outcome = validate(network_intent, self.state)
        if isinstance(outcome, Conflict):
            logger.warning(f"Intenção {intent_id} rejeitada: {outcome.reason}")
            return Deployment(user_intent, service_intent, network_intent, conflict=outcome.reason)

        self.state = outcome.state
        return Deployment(user_intent, service_intent, network_intent)

    def deploy(self, texts: Sequence[str]) -> list[Deployment]:
        """Processa todas as intenções, na ordem recebida."""
        deployments = [self.process(text) for text in texts]
        admitted = sum(1 for d in deployments if d.admitted)
        logger.info(f"{admitted}/{len(deployments)} intenções admitidas")
        return deployments

    def simulate(self, deployments: list[Deployment]) -> RunResult:
        """
        Simula as intenções admitidas e gera os relatórios.

        O estado de cada intenção avança com o evento de cada relatório
        (periódicos primeiro, o de fim de execução por último).
        """
        admitted = [d for d in deployments if d.admitted]
        result = RunResult(deployments=deployments)
        result.records = run_simulation(self.config, [d.network_intent for d in admitted])

        end_ms = self.config.duration_s * 1000.0
        for record in result.records.values():
            delivered = [p.deliver_ms for p in record.packets if p.deliver_ms is not None]
            end_ms = max([end_ms, *delivered])

        for deployment in admitted:
            intent = deployment.network_intent
            record = result.records[intent.intent_id]
            result.measurements[intent.intent_id] = measure(record)

            periodic = self._periodic_reports(intent, record)
            for report in periodic:
                intent = apply_event(intent, feedback(report))
            result.periodic[intent.intent_id] = periodic

            verdicts = judge(result.measurements[intent.intent_id], intent)
            report = intent_report(
                intent,
                [expectation_report(verdicts, intent)],
                timestamp_ms=end_ms,
                report_number=len(periodic) + 1,
            )
            deployment.network_intent = apply_event(intent, feedback(report))
            result.reports[intent.intent_id] = report

        logger.info(
            f"Execução concluída: {len(result.reports)} relatórios, degradados: {result.degraded}"
        )
        return result

    def _periodic_reports(self, intent: NetworkIntent, record: FlowRecord) -> list[IntentReport]:
        if self.config.report_interval_s is None or not record.packets:
            return []
        reports = []
        for number, window in enumerate(measure_windows(record, self.config.report_interval_s * 1000.0), start=1):
            verdicts = judge(window, intent)
            reports.append(
                intent_report(
                    intent,
                    [expectation_report(verdicts, intent)],
                    timestamp_ms=window.window_end_ms or 0.0,
                    report_number=number,
                )
            )
        return reports

    def run(self, texts: Sequence[str]) -> RunResult:
        """Implanta e simula; intenções rejeitadas ficam fora da simulação."""
        return self.simulate(self.deploy(texts))


# ==================== Artefatos ====================


def write_intents(deployments: Sequence[Deployment], out_dir: Path) -> None:
    """Intenções de rede em Turtle e JSON (out/intents/)."""
    directory = out_dir / "intents"
    directory.mkdir(parents=True, exist_ok=True)
    for deployment in deployments:
        intent = deployment.network_intent
        (directory / f"{intent.intent_id}.ttl").write_text(network_intent_to_turtle(intent), encoding="utf-8")
        (directory / f"{intent.intent_id}.json").write_text(network_intent_to_json(intent), encoding="utf-8")


def write_artifacts(result: RunResult, out_dir: Path) -> None:
    """
    Grava a árvore de saída de uma execução.

    - intents/<id>.ttl e .json
    - reports/report-<id>.ttl e .json (resumo), reports/periodic/report-<id>-<n>.ttl
    - measurements/packets.csv, flows.csv e measurements.json
    """
    try:
        write_intents(result.deployments, out_dir)

        services = {d.network_intent.intent_id: d.network_intent.service for d in result.deployments}
        reports_dir = out_dir / "reports"
        reports_dir.mkdir(parents=True, exist_ok=True)
        for intent_id, report in result.reports.items():
            (reports_dir / f"report-{intent_id}.ttl").write_text(serialize_turtle(report.graph), encoding="utf-8")
            summary = report_summary(report, services[intent_id])
            (reports_dir / f"report-{intent_id}.json").write_text(summary.model_dump_json(indent=2), encoding="utf-8")

        for intent_id, reports in result.periodic.items():
            if not reports:
                continue
            periodic_dir = reports_dir / "periodic"
            periodic_dir.mkdir(parents=True, exist_ok=True)
            for report in reports:
                path = periodic_dir / f"report-{intent_id}-{report.report_number}.ttl"
                path.write_text(serialize_turtle(report.graph), encoding="utf-8")

        measurements_dir = out_dir / "measurements"
        write_packets_csv(result.records, measurements_dir / "packets.csv")
        write_flows_csv(result.records, result.measurements, measurements_dir / "flows.csv")
        (measurements_dir / "measurements.json").write_text(
            records_to_json(result.records, result.measurements), encoding="utf-8"
        )
    except OSError as e:
        logger.error(f"Erro ao gravar artefatos em {out_dir}: {e}")
        logger.error(traceback.format_exc())
        raise

    logger.info(f"Artefatos gravados em {out_dir}")
