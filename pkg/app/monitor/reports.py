"""
ICM intent and expectation reports.

Forma do relatório de expectativa (um ramo por veredicto):

    rep:ER2_ServiceProperty a icm:ExpectationReport ;
        icm:compliant [ a icm:PropertyParameter ;
            icm:reason icm:ReasonMeetsRequirement ;
            icm:reportsAbout exI:Par3_per ;
            icm:valueBy [ kpi:packeterrorrate "0"^^xsd:string ] ] ;
        icm:degraded [ ... kpi:latency "493.1097 ms" ... ] ;
        icm:hasTarget catalog:ConvVideo ;
        icm:reportsAbout exI:Exp1_property .

O grafo carrega também as definições de limiar (exI:ParN) referenciadas
por icm:reportsAbout, o que permite a extração inversa dos veredictos.
"""

import logging
from decimal import Decimal
from typing import Optional, Sequence

from pydantic import ValidationError

from app.core.exceptions import EmptyReports, EmptyVerdicts, ReportFormatError
from app.knowledge.vocabulary import (
    BASE,
    CATALOG,
    ICM,
    KPIS,
    PREFIXES,
    catalog_node,
    decimal_lexical,
    icm,
    imo,
    intent_ns,
    kpi_by_iri,
    kpi_by_name,
    report_ns,
)
from app.models import ComplianceReason, ComplianceStatus, LifecycleEvent, StateEvent
from app.monitor.compliance import format_value, parse_value
from app.rdf.graph import Graph
from app.rdf.terms import RDF_TYPE, XSD_DECIMAL, XSD_INTEGER, XSD_STRING, Iri, Literal, Triple, fresh_blank
from app.schemas import ComplianceVerdict, IntentReport, NetworkIntent, ReportSummary
from app.sparql.evaluator import evaluate, load_query
from app.sparql.query import parse_query

logger = logging.getLogger(__name__)

EXPECTATION_REPORT = "ER2_ServiceProperty"
REPORT_PREFIX = BASE + "report/"

_BRANCHES = {
    ComplianceStatus.COMPLIANT: icm("compliant"),
    ComplianceStatus.DEGRADED: icm("degraded"),
}
_STATE_IRIS = {event: imo(event.value) for event in StateEvent}


def _report_prefixes(intent_id: str) -> dict[str, str]:
    return {**PREFIXES, "exI": intent_ns(intent_id), "rep": report_ns(intent_id)}


def _timestamp(value: float) -> Literal:
    return Literal(decimal_lexical(Decimal(repr(float(value)))), XSD_DECIMAL)


# ==================== Relatório de expectativa ====================


def expectation_report(
    verdicts: Sequence[ComplianceVerdict],
    intent: NetworkIntent,
    name: str = EXPECTATION_REPORT,
) -> Graph:
    """
    Gera o relatório de expectativa (icm:ExpectationReport) dos veredictos.

    Args:
        verdicts: Veredictos de judge
        intent: Intenção de rede reportada
        name: Nome local do nó de relatório no namespace rep:

    Returns:
        Graph: Nó de relatório, um ramo icm:compliant/icm:degraded por veredicto
        e as definições de limiar exI:ParN

    Raises:
        EmptyVerdicts: Lista de veredictos vazia
    """
    if not verdicts:
        raise EmptyVerdicts(f"nenhum veredicto para {intent.intent_id}")

    exi = intent_ns(intent.intent_id)
    node = Iri(report_ns(intent.intent_id) + name)
    rdf_type = Iri(RDF_TYPE)
    triples = [
        Triple(node, rdf_type, icm("ExpectationReport")),
        Triple(node, icm("hasTarget"), catalog_node(intent.service)),
        Triple(node, icm("reportsAbout"), Iri(exi + "Exp1_property")),
    ]

    for item in verdicts:
        definition = kpi_by_name(item.kpi)
        parameter = Iri(exi + definition.parameter_id)
        branch, holder, threshold_holder = fresh_blank(), fresh_blank(), fresh_blank()
        triples += [
            Triple(node, _BRANCHES[item.status], branch),
            Triple(branch, rdf_type, icm("PropertyParameter")),
            Triple(branch, icm("reason"), icm(item.reason.value)),
            Triple(branch, icm("reportsAbout"), parameter),
            Triple(branch, icm("valueBy"), holder),
            Triple(holder, definition.term, Literal(format_value(item.observed, item.unit), XSD_STRING)),
            # Limiar da intenção referenciado pelo ramo
            Triple(parameter, rdf_type, Iri(definition.parameter_class)),
            Triple(parameter, icm("valueBy"), threshold_holder),
            Triple(threshold_holder, definition.term, Literal(decimal_lexical(item.threshold), definition.datatype)),
        ]

    return Graph(triples, _report_prefixes(intent.intent_id))


# ==================== Relatório de intenção ====================


def state_event_of(verdicts: Sequence[ComplianceVerdict]) -> StateEvent:
    """StateComplies se nenhum veredicto estiver degradado."""
    if any(v.status is ComplianceStatus.DEGRADED for v in verdicts):
        return StateEvent.STATE_DEGRADES
    return StateEvent.STATE_COMPLIES


def intent_report(
    intent: NetworkIntent,
    expectation_reports: Sequence[Graph],
    timestamp_ms: float = 0.0,
    report_number: int = 1,
) -> IntentReport:
    """
    Gera o relatório de intenção (icm:IntentReport).

    Args:
        intent: Intenção de rede reportada
        expectation_reports: Grafos de expectation_report
        timestamp_ms: Instante simulado do relatório
        report_number: Número do relatório na sequência

    Returns:
        IntentReport: state_event StateComplies sse não houver veredicto degradado

    Raises:
        EmptyReports: Nenhum relatório de expectativa
        ReportFormatError: Relatório de expectativa malformado

    Example:
        >>> report = intent_report(intent, [expectation_report(verdicts, intent)])
        >>> report.state_event
        <StateEvent.STATE_DEGRADES: 'StateDegrades'>
    """
    if not expectation_reports:
        raise EmptyReports(f"nenhum relatório de expectativa para {intent.intent_id}")

    verdicts = [v for graph in expectation_reports for v in extract_verdicts(graph)]
    state_event = state_event_of(verdicts)

    node = Iri(report_ns(intent.intent_id) + f"IR{report_number}")
    graph = Graph((), _report_prefixes(intent.intent_id))
    for expectation in expectation_reports:
        graph = graph.merge(expectation)
        for report_node in expectation.subjects(Iri(RDF_TYPE), icm("ExpectationReport")):
            graph = graph.insert(Triple(node, icm("hasExpectationReport"), report_node))

    graph = graph.insert_all([
        Triple(node, Iri(RDF_TYPE), icm("IntentReport")),
        Triple(node, icm("reportsAbout"), Iri(intent_ns(intent.intent_id) + "Intent")),
        Triple(node, icm("reportNumber"), Literal(str(report_number), XSD_INTEGER)),
        Triple(node, icm("reportGenerated"), _timestamp(timestamp_ms)),
        Triple(node, icm("intentHandlingState"), _STATE_IRIS[state_event]),
    ])

    logger.info(f"Relatório {report_number} de {intent.intent_id}: {state_event.value}")
    return IntentReport(
        intent_id=intent.intent_id,
        report_number=report_number,
        expectation_reports=list(expectation_reports),
        verdicts=verdicts,
        state_event=state_event,
        timestamp_ms=timestamp_ms,
        graph=graph,
    )


def feedback(report: IntentReport) -> LifecycleEvent:
    """
    Evento de ciclo de vida correspondente ao relatório.

    Example:
        >>> feedback(report)
        <LifecycleEvent.REPORT_COMPLIANT: 'ReportCompliant'>
    """
    if report.state_event is StateEvent.STATE_COMPLIES:
        return LifecycleEvent.REPORT_COMPLIANT
    return LifecycleEvent.REPORT_DEGRADED


# ==================== Extração ====================


def _local(term: object, namespace: str) -> Optional[str]:
    if isinstance(term, Iri) and term.value.startswith(namespace):
        return term.value[len(namespace):]
    return None


def extract_verdicts(graph: Graph) -> list[ComplianceVerdict]:
    """
    Extrai os veredictos de um relatório (inverso de expectation_report).

    Usa a consulta de forma report-shape.rq: uma linha por ramo.

    Returns:
        list[ComplianceVerdict]: Na ordem da tabela de KPIs

    Raises:
        ReportFormatError: Ramo sem limiar, KPI desconhecido ou valor inválido
    """
    rows = evaluate(parse_query(load_query("report-shape.rq")), graph)
    statuses = {iri: status for status, iri in _BRANCHES.items()}
    order = {d.curie: index for index, d in enumerate(KPIS)}

    verdicts = []
    for row in rows:
        status = statuses.get(row["compliance"])
        if status is None:
            continue
        definition = kpi_by_iri(getattr(row["kpi"], "value", ""))
        if definition is None:
            raise ReportFormatError(f"KPI desconhecido no relatório: {row['kpi']}")

        holder = graph.value(row["about"], icm("valueBy"))
        threshold = graph.value(holder, definition.term) if holder is not None else None
        if not isinstance(threshold, Literal) or not isinstance(row["value"], Literal):
            raise ReportFormatError(f"limiar ou valor ausente para {definition.curie}")

        try:
            verdicts.append(
                ComplianceVerdict(
                    kpi=definition.curie,
                    observed=parse_value(row["value"].lexical, definition.unit),
                    threshold=Decimal(threshold.lexical),
                    unit=definition.unit,
                    status=status,
                    reason=ComplianceReason(_local(row["reason"], ICM)),
                )
            )
        except (ValueError, ArithmeticError, ValidationError) as e:
            raise ReportFormatError(f"ramo inválido para {definition.curie}: {e}") from e

    if not verdicts:
        raise ReportFormatError("relatório sem ramos icm:compliant/icm:degraded")
    return sorted(verdicts, key=lambda v: order[v.kpi])


def report_intent_id(graph: Graph) -> tuple[Iri, str]:
    """
    Nó icm:IntentReport e o intent_id codificado no seu IRI.

    Raises:
        ReportFormatError: Nenhum (ou mais de um) nó icm:IntentReport
    """
    nodes = graph.subjects(Iri(RDF_TYPE), icm("IntentReport"))
    if len(nodes) != 1 or not isinstance(nodes[0], Iri):
        raise ReportFormatError(f"esperado um icm:IntentReport, encontrados {len(nodes)}")
    local = _local(nodes[0], REPORT_PREFIX)
    if not local or "/" not in local:
        raise ReportFormatError(f"IRI de relatório inesperado: {nodes[0].value}")
    return nodes[0], local.rsplit("/", 1)[0]


def read_report(graph: Graph) -> ReportSummary:
    """
    Resume um relatório de intenção lido de Turtle.

    Raises:
        ReportFormatError: Estrutura ausente ou inválida
    """
    node, intent_id = report_intent_id(graph)

    state = graph.value(node, icm("intentHandlingState"))
    events = {iri: event for event, iri in _STATE_IRIS.items()}
    if state not in events:
        raise ReportFormatError(f"estado de relatório inválido: {state}")

    generated = graph.value(node, icm("reportGenerated"))
    targets = [
        target
        for report_node in graph.objects(node, icm("hasExpectationReport"))
        for target in graph.objects(report_node, icm("hasTarget"))
    ]
    service_name = _local(targets[0], CATALOG) if targets else None
    if not isinstance(generated, Literal) or not service_name:
        raise ReportFormatError(f"relatório de {intent_id} sem timestamp ou alvo")

    return ReportSummary(
        intent_id=intent_id,
        service=service_name,
        state_event=events[state],
        timestamp_ms=float(generated.lexical),
        verdicts=extract_verdicts(graph),
    )


def report_summary(report: IntentReport, service_name: str) -> ReportSummary:
    """Resumo JSON (intent_id, state_event, veredictos por KPI)."""
    return ReportSummary(
        intent_id=report.intent_id,
        service=service_name,
        state_event=report.state_event,
        timestamp_ms=report.timestamp_ms,
        verdicts=report.verdicts,
    )
