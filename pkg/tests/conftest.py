"""
Global test configuration and fixtures.
Provides catalog, simulator config, intent and report fixtures for all tests.
"""

from decimal import Decimal

import pytest
import rdflib
import rdflib.compare

from app.core.config import load_sim_config
from app.knowledge.catalog import load_builtin
from app.knowledge.vocabulary import intent_ns, report_ns
from app.models import IntentState, ResourceKind
from app.pipeline.intents import build_network_intent, build_service_intent
from app.pipeline.recognizer import recognize
from app.rdf.graph import Graph
from app.rdf.terms import XSD_STRING, BlankNode, Iri
from app.schemas import KpiMeasurement, NetworkIntent, Quantity

ALL_SERVICES = [
    "ConvVoice",
    "ConvVideo",
    "ProcessMonitor",
    "NonConvVideo",
    "McpttVoice",
    "ImsSignalling",
    "VideoBuffered",
    "RealTimeGaming",
    "TcpInteractive",
    "McpttSignalling",
    "McpttData",
]

DISCRETE_AUTOMATION = {
    "name": "DiscreteAutomation",
    "category": "NonMissionCritical",
    "resource": "GBR",
    "qi5G": 82,
    "priority": 19,
    "pdb_ms": "10",
    "per": "0.0001",
    "gbr_rate_bps": "2000000",
    "resource_subclass": "DelayCriticalGBR",
}


def to_rdflib_graph(graph: Graph) -> rdflib.Graph:
    """Copy of a graph as an rdflib.Graph, term by term."""

    def convert(term):
        if isinstance(term, Iri):
            return rdflib.URIRef(term.value)
        if isinstance(term, BlankNode):
            return rdflib.BNode(term.id)
        if term.language is not None:
            return rdflib.Literal(term.lexical, lang=term.language)
        if term.datatype == XSD_STRING:
            return rdflib.Literal(term.lexical)
        return rdflib.Literal(term.lexical, datatype=rdflib.URIRef(term.datatype))

    converted = rdflib.Graph()
    for subject, predicate, obj in graph:
        converted.add((convert(subject), convert(predicate), convert(obj)))
    return converted


def isomorphic(first: Graph, second: Graph) -> bool:
    """Graph isomorphism through rdflib.compare."""
    return rdflib.compare.isomorphic(to_rdflib_graph(first), to_rdflib_graph(second))


@pytest.fixture(scope="session")
def catalog():
    """
    Built-in catalog (11 services). Immutable, shared across the session.
    """
    return load_builtin()


@pytest.fixture(scope="session")
def sim_config():
    """
    Shipped simulator configuration (default-config.json).
    """
    return load_sim_config()


@pytest.fixture
def make_intent(catalog):
    """
    Builds the network intent of a catalog service through the pipeline.
    """

    def _make(service_name: str, intent_id=None) -> NetworkIntent:
        user_intent = recognize(service_name, catalog)
        service_intent = build_service_intent(user_intent, catalog, intent_id or f"I-{service_name}-1")
        return build_network_intent(service_intent, catalog)

    return _make


@pytest.fixture
def flat_intent():
    """
    Factory for hand-made network intents (no catalog involved).
    """

    def _make(
        intent_id: str = "I-Test-1",
        resource: ResourceKind = ResourceKind.NGBR,
        priority: int = 10,
        latency_ms: str = "100",
        per: str = "0.01",
        gbr_rate_bps=None,
        service: str = "ConvVideo",
    ) -> NetworkIntent:
        thresholds = {
            "kpi:latency": Quantity(value=Decimal(latency_ms), unit="ms"),
            "kpi:packeterrorrate": Quantity(value=Decimal(per)),
            "met:priority": Quantity(value=Decimal(priority)),
            "met:qi5G": Quantity(value=Decimal(9)),
        }
        return NetworkIntent(
            intent_id=intent_id,
            service=service,
            resource=resource,
            thresholds=thresholds,
            priority=priority,
            qi5G=9,
            gbr_rate_bps=Decimal(gbr_rate_bps) if gbr_rate_bps is not None else None,
            state=IntentState.RECEIVED,
        )

    return _make


@pytest.fixture
def measurement():
    """
    Factory for KPI measurements.
    """

    def _make(intent_id: str, latency_ms, per: float = 0.0, sent: int = 100) -> KpiMeasurement:
        return KpiMeasurement(
            intent_id=intent_id,
            latency_ms=latency_ms,
            jitter_ms=0.0 if latency_ms is not None else None,
            per_observed=per,
            samples=sent if latency_ms is not None else 0,
            sent=sent,
        )

    return _make


def listing_prefixes(intent_id: str) -> str:
    """Turtle prefix header used by the report goldens."""
    return (
        "@prefix icm: <http://tio.models.tmforum.org/tio/v2.0.0/IntentCommonModel/> .\n"
        "@prefix kpi: <http://intentforge.org/kpi#> .\n"
        "@prefix catalog: <http://intentforge.org/catalog#> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        f"@prefix exI: <{intent_ns(intent_id)}> .\n"
        f"@prefix rep: <{report_ns(intent_id)}> .\n"
    )


@pytest.fixture(scope="session")
def convvideo_listing():
    """
    Degraded ConvVideo expectation report, reference listing.
    """
    return listing_prefixes("I-ConvVideo-1") + """
rep:ER2_ServiceProperty a icm:ExpectationReport ;
  icm:compliant [ a icm:PropertyParameter ;
    icm:reason icm:ReasonMeetsRequirement ;
    icm:reportsAbout exI:Par3_per ;
    icm:valueBy [ kpi:packeterrorrate "0"^^xsd:string ] ] ;
  icm:degraded [ a icm:PropertyParameter ;
    icm:reason icm:ReasonNotCompliant ;
    icm:reportsAbout exI:Par2_latency ;
    icm:valueBy [ kpi:latency "493.1097 ms"^^xsd:string ] ] ;
  icm:hasTarget catalog:ConvVideo ;
  icm:reportsAbout exI:Exp1_property .
"""


@pytest.fixture(scope="session")
def mcpttdata_listing():
    """
    Compliant McpttData expectation report, reference listing.
    """
    return listing_prefixes("I-McpttData-1") + """
rep:ER2_ServiceProperty a icm:ExpectationReport ;
  icm:compliant [ a icm:PropertyParameter ;
    icm:reason icm:ReasonMeetsRequirement ;
      icm:reportsAbout exI:Par3_per ;
      icm:valueBy [ kpi:packeterrorrate "0"^^xsd:string ] ],
    [ a icm:PropertyParameter ;
      icm:reason icm:ReasonMeetsRequirement ;
      icm:reportsAbout exI:Par2_latency ;
      icm:valueBy [ kpi:latency "17.6459 ms"^^xsd:string ] ] ;
  icm:hasTarget catalog:McpttData ;
  icm:reportsAbout exI:Exp1_property .
"""
