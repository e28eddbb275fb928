"""
Service-intent and network-intent construction (intent and network layers).

A intenção de serviço parte do template ICM embarcado (intent-template.ttl),
reescrito para o namespace da intenção, e recebe as expectativas de entrega
e de propriedade com os SLOs do catálogo. A intenção de rede resolve os
limiares de cada parâmetro de reporte pelo template de extração de KPI.
"""

import itertools
import logging
from decimal import Decimal
from functools import lru_cache
from typing import Iterable, Optional

from app.knowledge.catalog import RESOURCES_DIR, Catalog, kpi_of, kpis_of, resource_of
from app.knowledge.vocabulary import (
    KPIS,
    PREFIXES,
    TEMPLATE_NS,
    KpiDefinition,
    catalog_node,
    decimal_lexical,
    icm,
    intent_ns,
    kpi_by_name,
    service,
    target,
)
from app.models import IntentState, ResourceKind
from app.pipeline.lifecycle import STATE_IRIS
from app.rdf.graph import Graph
from app.rdf.terms import RDF_TYPE, Iri, Literal, Triple, fresh_blank
from app.rdf.turtle import parse_turtle, serialize_turtle
from app.schemas import NetworkIntent, Quantity, ServiceIntent, UserIntent

logger = logging.getLogger(__name__)

TEMPLATE_PATH = RESOURCES_DIR / "intent-template.ttl"
REQUIRED_KPIS = ("kpi:latency", "kpi:packeterrorrate", "met:priority", "met:qi5G")


class IntentIdGenerator:
    """
    Gera identificadores I-<serviço>-<n> com contador monotônico.

    Example:
        >>> ids = IntentIdGenerator()
        >>> ids.next("ConvVideo"), ids.next("McpttData")
        ('I-ConvVideo-1', 'I-McpttData-2')
    """

    def __init__(self, start: int = 1) -> None:
        self._counter = itertools.count(start)

    def next(self, service_name: str) -> str:
        return f"I-{service_name}-{next(self._counter)}"


@lru_cache(maxsize=1)
def _template_text() -> str:
    return TEMPLATE_PATH.read_text(encoding="utf-8")


def _node(intent_id: str, local: str) -> Iri:
    return Iri(intent_ns(intent_id) + local)


def _intent_graph(
    intent_id: str,
    service_name: str,
    resource: ResourceKind,
    values: Iterable[tuple[KpiDefinition, Literal]],
) -> Graph:
    """Template ICM instanciado com alvo, recurso e parâmetros."""
    graph = parse_turtle(_template_text()).rename_namespace(TEMPLATE_NS, intent_ns(intent_id))
    graph = graph.with_prefixes(PREFIXES)
    rdf_type = Iri(RDF_TYPE)
    node = catalog_node(service_name)
    delivery = _node(intent_id, "Exp0_delivery")
    prop = _node(intent_id, "Exp1_property")

    triples = [
        Triple(delivery, icm("target"), node),
        Triple(delivery, service("resource"), target(resource.value)),
        Triple(prop, icm("target"), node),
    ]
    for definition, literal in values:
        parameter = _node(intent_id, definition.parameter_id)
        holder = fresh_blank()
        triples += [
            Triple(prop, icm("hasParameter"), parameter),
            Triple(parameter, rdf_type, Iri(definition.parameter_class)),
            Triple(parameter, icm("valueBy"), holder),
            Triple(holder, definition.term, literal),
        ]
    return graph.insert_all(triples)


def build_service_intent(
    user_intent: UserIntent,
    catalog: Catalog,
    intent_id: Optional[str] = None,
) -> ServiceIntent:
    """
    Cria a intenção de serviço a partir do template ICM.

    Args:
        user_intent: Intenção reconhecida
        catalog: Catálogo de serviços
        intent_id: Identificador (padrão: I-<serviço>-1)

    Returns:
        ServiceIntent: Grafo com icm:Intent, icm:DeliveryExpectation e
        icm:PropertyExpectation; reporting_params com todos os KPIs do serviço

    Raises:
        UnknownService: Serviço não está (mais) no catálogo
    """
    service_name = user_intent.recognized_service
    catalog.spec(service_name)
    intent_id = intent_id or f"I-{service_name}-1"

    values = kpis_of(catalog, service_name)
    definitions = [kpi_by_name(curie) for curie in values]
    graph = _intent_graph(
        intent_id,
        service_name,
        resource_of(catalog, service_name),
        [(definition, values[definition.curie]) for definition in definitions],
    )

    # Reporter da intenção: parâmetros a reportar sobre a expectativa de propriedade
    reporter = _node(intent_id, "Rep0_reporter")
    graph = graph.insert_all(
        [
            Triple(reporter, Iri(RDF_TYPE), service(f"{service_name}Reporter")),
            Triple(reporter, icm("reportsAbout"), _node(intent_id, "Exp1_property")),
            Triple(_node(intent_id, "Intent"), service("requester"), Literal(user_intent.requester)),
        ]
        + [Triple(reporter, icm("reportingParameter"), d.term) for d in definitions]
    )

    logger.info(f"Intenção de serviço {intent_id} criada ({len(graph)} triplas)")
    return ServiceIntent(
        intent_id=intent_id,
        graph=graph,
        service=service_name,
        reporting_params=[d.curie for d in definitions],
    )


def build_network_intent(service_intent: ServiceIntent, catalog: Catalog) -> NetworkIntent:
    """
    Resolve os limiares da intenção de rede por consultas ao knowledge base.

    Cada parâmetro de reporte (e os KPIs obrigatórios) é lido com o
    template de extração de KPI; o recurso vem de resource_of.

    Raises:
        UnknownService: Serviço fora do catálogo
        UnknownKpi: KPI ausente no serviço

    Example:
        >>> intent = build_network_intent(service_intent, load_builtin())
        >>> intent.thresholds["kpi:latency"]
        Quantity(value=Decimal('150'), unit='ms')
    """
    service_name = service_intent.service
    wanted = list(dict.fromkeys([*service_intent.reporting_params, *REQUIRED_KPIS]))

    thresholds: dict[str, Quantity] = {}
    for curie in wanted:
        definition = kpi_by_name(curie)
        value = kpi_of(catalog, service_name, definition.curie)
        thresholds[definition.curie] = Quantity(value=Decimal(value.lexical), unit=definition.unit)

    rate = thresholds.get("met:gbrRate")
    intent = NetworkIntent(
        intent_id=service_intent.intent_id,
        service=service_name,
        resource=resource_of(catalog, service_name),
        thresholds=thresholds,
        priority=int(thresholds["met:priority"].value),
        qi5G=int(thresholds["met:qi5G"].value),
        gbr_rate_bps=rate.value if rate else None,
        state=IntentState.RECEIVED,
    )
    logger.info(
        f"Intenção de rede {intent.intent_id}: {intent.resource.value}, "
        f"latência <= {thresholds['kpi:latency']}, PER <= {thresholds['kpi:packeterrorrate']}"
    )
    return intent


# ==================== Exportação ====================


def network_intent_graph(intent: NetworkIntent) -> Graph:
    """Forma ICM da intenção de rede, com o estado atual (icm:intentHandlingState)."""
    values = []
    for definition in KPIS:
        if definition.curie in intent.thresholds:
            quantity = intent.thresholds[definition.curie]
            values.append((definition, Literal(decimal_lexical(quantity.value), definition.datatype)))
    graph = _intent_graph(intent.intent_id, intent.service, intent.resource, values)
    return graph.insert(
        Triple(_node(intent.intent_id, "Intent"), icm("intentHandlingState"), STATE_IRIS[intent.state])
    )


def network_intent_to_turtle(intent: NetworkIntent) -> str:
    return serialize_turtle(network_intent_graph(intent))


def network_intent_to_json(intent: NetworkIntent) -> str:
    """Registro JSON plano (fronteira com o simulador)."""
    return intent.model_dump_json(by_alias=True, indent=2)


def network_intent_from_json(text: str) -> NetworkIntent:
    return NetworkIntent.model_validate_json(text)
