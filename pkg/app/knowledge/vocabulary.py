"""
Namespaces and KPI vocabulary of the knowledge base.

Define os namespaces ICM/IMO, os namespaces das extensões (serviço,
recurso, KPI, métricas, unidades, catálogo) e a tabela de KPIs com a
correspondência entre propriedade RDF, datatype, unidade e campo do
ServiceSpec.
"""

from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

from app.core.exceptions import UnknownKpi
from app.rdf.terms import RDF, RDFS, XSD, XSD_DECIMAL, XSD_INTEGER, Iri

# ==================== Namespaces ====================

ICM = "http://tio.models.tmforum.org/tio/v2.0.0/IntentCommonModel/"
IMO = "http://tio.models.tmforum.org/tio/v2.0.0/IntentManagementOntology/"

BASE = "http://intentforge.org/"
KPI = BASE + "kpi#"
MET = BASE + "met#"
SERVICE = BASE + "service#"
TARGET = BASE + "targetResource#"
CATALOG = BASE + "catalog#"
UNIT = BASE + "unit#"

# Namespace do template de intenção (reescrito por intenção)
TEMPLATE_NS = BASE + "intent/template/"

UNIT_MILLISECOND = UNIT + "millisecond"
UNIT_BIT_PER_SECOND = UNIT + "bitPerSecond"

PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
    "icm": ICM,
    "imo": IMO,
    "kpi": KPI,
    "met": MET,
    "service": SERVICE,
    "targetResource": TARGET,
    "catalog": CATALOG,
    "unit": UNIT,
}


def icm(name: str) -> Iri:
    return Iri(ICM + name)


def imo(name: str) -> Iri:
    return Iri(IMO + name)


def service(name: str) -> Iri:
    return Iri(SERVICE + name)


def target(name: str) -> Iri:
    return Iri(TARGET + name)


def catalog_node(name: str) -> Iri:
    """Nó de instância do serviço no catálogo (valor de `serv` no template)."""
    return Iri(CATALOG + name)


def intent_ns(intent_id: str) -> str:
    return f"{BASE}intent/{intent_id}/"


def report_ns(intent_id: str) -> str:
    return f"{BASE}report/{intent_id}/"


def decimal_lexical(value: Decimal) -> str:
    """Forma léxica estável: inteiros sem casas ("150"), demais sem expoente."""
    if value == value.to_integral_value():
        return format(value.quantize(Decimal(1)), "f")
    return format(value.normalize(), "f")


# ==================== KPIs ====================


@dataclass(frozen=True)
class KpiDefinition:
    """
    KPI conhecido pelo knowledge base.

    Attributes:
        curie: Forma prefixada (ex.: kpi:latency)
        iri: IRI da propriedade usada em icm:valueBy
        parameter_class: Subclasse de icm:PropertyParameter
        datatype: Datatype dos literais de valor
        unit: Unidade (texto) dos limiares e medições
        short_name: Nome curto usado na CLI
        parameter_id: Nó do parâmetro na intenção (ex.: Par2_latency)
        spec_field: Campo correspondente do ServiceSpec
        measured: KPI observado pelo simulador
        aliases: Outros nomes aceitos
    """

    curie: str
    iri: str
    parameter_class: str
    datatype: str
    unit: str
    short_name: str
    parameter_id: str
    spec_field: str
    measured: bool = False
    aliases: tuple[str, ...] = ()

    @property
    def term(self) -> Iri:
        return Iri(self.iri)


KPIS: tuple[KpiDefinition, ...] = (
    KpiDefinition(
        curie="kpi:latency",
        iri=KPI + "latency",
        parameter_class=KPI + "LatencyParameter",
        datatype=UNIT_MILLISECOND,
        unit="ms",
        short_name="latency",
        parameter_id="Par2_latency",
        spec_field="pdb_ms",
        measured=True,
        aliases=("pdb", "delay"),
    ),
    KpiDefinition(
        curie="kpi:packeterrorrate",
        iri=KPI + "packeterrorrate",
        parameter_class=KPI + "PacketErrorRateParameter",
        datatype=XSD_DECIMAL,
        unit="",
        short_name="packeterrorrate",
        parameter_id="Par3_per",
        spec_field="per",
        measured=True,
        aliases=("per",),
    ),
    KpiDefinition(
        curie="met:priority",
        iri=MET + "priority",
        parameter_class=MET + "PriorityParameter",
        datatype=XSD_INTEGER,
        unit="",
        short_name="priority",
        parameter_id="Par4_priority",
        spec_field="priority",
    ),
    KpiDefinition(
        curie="met:qi5G",
        iri=MET + "qi5G",
        parameter_class=MET + "QI5GParameter",
        datatype=XSD_INTEGER,
        unit="",
        short_name="qi5G",
        parameter_id="Par5_qi5G",
        spec_field="qi5g",
        aliases=("5qi", "qi5g"),
    ),
    KpiDefinition(
        curie="met:gbrRate",
        iri=MET + "gbrRate",
        parameter_class=MET + "GbrRateParameter",
        datatype=UNIT_BIT_PER_SECOND,
        unit="bit/s",
        short_name="gbrRate",
        parameter_id="Par6_gbrRate",
        spec_field="gbr_rate_bps",
        aliases=("gbr", "gbrrate"),
    ),
)

LATENCY = KPIS[0]
PACKET_ERROR_RATE = KPIS[1]


def kpi_by_name(name: str) -> KpiDefinition:
    """
    Resolve um KPI por CURIE, IRI, nome curto ou alias (sem diferenciar caixa).

    Raises:
        UnknownKpi: Nome não corresponde a nenhum KPI

    Example:
        >>> kpi_by_name("latency").curie
        'kpi:latency'
    """
    wanted = name.strip()
    for kpi in KPIS:
        names = {kpi.curie, kpi.iri, kpi.short_name, *kpi.aliases}
        if wanted in names or wanted.lower() in {n.lower() for n in names}:
            return kpi
    raise UnknownKpi(name)


def kpi_by_iri(iri: str) -> Optional[KpiDefinition]:
    for kpi in KPIS:
        if kpi.iri == iri:
            return kpi
    return None
