"""
Service catalog backed by the RDF knowledge base.

O catálogo mantém duas formas sincronizadas:
- graph: modelos ICM + extensões de serviço, recurso e KPI (RDF)
- specs: registros ServiceSpec derivados do grafo via consultas SPARQL

Os valores dos registros são sempre lidos do grafo pelas mesmas consultas
que o pipeline usa (template de extração de KPI), de modo que registro e
grafo não divergem.
"""

import json
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Optional, Union

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import (
    AmbiguousResult,
    DuplicateService,
    InvalidConfig,
    InvalidSpec,
    UnknownKpi,
    UnknownService,
)
from app.knowledge.vocabulary import (
    CATALOG,
    KPIS,
    PREFIXES,
    TARGET,
    KpiDefinition,
    catalog_node,
    decimal_lexical,
    icm,
    kpi_by_iri,
    kpi_by_name,
    service,
    target,
)
from app.models import ResourceKind, ServiceCategory
from app.rdf.graph import Graph
from app.rdf.terms import RDF_TYPE, RDFS, Iri, Literal, Term, Triple, fresh_blank
from app.rdf.turtle import parse_turtle, serialize_turtle
from app.schemas import ServiceSpec
from app.sparql.evaluator import evaluate, load_query, substitute
from app.sparql.query import parse_query

logger = logging.getLogger(__name__)

RESOURCES_DIR = Path(__file__).resolve().parent / "resources"
BUILTIN_MODELS = ("icm-core.ttl", "kpis.ttl", "services.ttl")

RDF_TYPE_IRI = Iri(RDF_TYPE)
SUBCLASS_OF = Iri(RDFS + "subClassOf")
LABEL = Iri(RDFS + "label")

_CATEGORY_PREFIX = {
    ServiceCategory.MISSION_CRITICAL: "Mcptt",
    ServiceCategory.NON_MISSION_CRITICAL: "NonMcptt",
}


@dataclass(frozen=True)
class Catalog:
    """
    Catálogo imutável de serviços.

    Attributes:
        graph: Forma RDF (modelos + instâncias de serviço)
        specs: Forma de registro, nome -> ServiceSpec (ordem alfabética)
    """

    graph: Graph
    specs: Mapping[str, ServiceSpec] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ordered = {name: self.specs[name] for name in sorted(self.specs)}
        object.__setattr__(self, "specs", MappingProxyType(ordered))

    def __contains__(self, name: object) -> bool:
        return name in self.specs

    def spec(self, name: str) -> ServiceSpec:
        """
        Raises:
            UnknownService: Serviço fora do catálogo
        """
        if name not in self.specs:
            raise UnknownService(name)
        return self.specs[name]


# ==================== Consultas ====================


def _run(template: str, graph: Graph, **bindings: Term) -> list[dict[str, Term]]:
    return evaluate(parse_query(substitute(load_query(template), bindings)), graph)


def _service_node(graph: Graph, name: str) -> Iri:
    node = catalog_node(name)
    if not graph.objects(node, RDF_TYPE_IRI):
        raise UnknownService(name)
    return node


def kpi_of(catalog: Catalog, service_name: str, kpi: str) -> Term:
    """
    Valor de um KPI do serviço via template de extração (service-kpi.rq).

    Args:
        catalog: Catálogo consultado
        service_name: Nome do serviço (ex.: ConvVideo)
        kpi: KPI por CURIE, nome curto ou alias (ex.: kpi:latency, latency)

    Returns:
        Term: Literal com o valor (ex.: "150"^^unit:millisecond)

    Raises:
        UnknownService: Serviço inexistente
        UnknownKpi: KPI desconhecido ou ausente no serviço
        AmbiguousResult: Mais de um valor (grafo corrompido)

    Example:
        >>> kpi_of(load_builtin(), "ConvVideo", "kpi:latency").lexical
        '150'
    """
    definition = kpi_by_name(kpi)
    node = _service_node(catalog.graph, service_name)
    rows = _run("service-kpi.rq", catalog.graph, param=definition.term, serv=node)
    if not rows:
        raise UnknownKpi(definition.curie)
    if len(rows) > 1:
        raise AmbiguousResult(service_name, definition.curie, len(rows))
    return rows[0]["value"]


def kpis_of(catalog: Catalog, service_name: str) -> dict[str, Term]:
    """Todos os KPIs do serviço (CURIE -> literal), na ordem da tabela de KPIs."""
    return _kpis_from_graph(catalog.graph, service_name)


def _kpis_from_graph(graph: Graph, service_name: str) -> dict[str, Term]:
    node = _service_node(graph, service_name)
    found: dict[str, list[Term]] = {}
    for row in _run("service-kpis.rq", graph, serv=node):
        definition = kpi_by_iri(str(row["parameter"]))
        if definition is not None:
            found.setdefault(definition.curie, []).append(row["value"])
    values: dict[str, Term] = {}
    for definition in KPIS:
        terms = found.get(definition.curie, [])
        if len(terms) > 1:
            raise AmbiguousResult(service_name, definition.curie, len(terms))
        if terms:
            values[definition.curie] = terms[0]
    return values


def _resource_chain(graph: Graph, service_name: str) -> tuple[ResourceKind, Optional[str]]:
    """Percorre rdfs:subClassOf até targetResource:GBR/NGBR."""
    node = _service_node(graph, service_name)
    frontier = list(graph.objects(node, RDF_TYPE_IRI))
    seen: set[Term] = set()
    subclass: Optional[str] = None
    while frontier:
        current = frontier.pop(0)
        if current in seen:
            continue
        seen.add(current)
        for kind in ResourceKind:
            if current == target(kind.value):
                return kind, subclass
        if isinstance(current, Iri) and current.value.startswith(TARGET):
            subclass = current.value[len(TARGET):]
        frontier.extend(graph.objects(current, SUBCLASS_OF))
    raise UnknownService(service_name)


def resource_of(catalog: Catalog, service_name: str) -> ResourceKind:
    """
    Tipo de recurso do serviço (subclasse de icm:Target alcançada).

    Raises:
        UnknownService: Serviço inexistente

    Example:
        >>> resource_of(load_builtin(), "McpttData")
        <ResourceKind.NGBR: 'NGBR'>
    """
    return _resource_chain(catalog.graph, service_name)[0]


# ==================== Derivação de registros ====================


def _number(term: Term) -> Decimal:
    if not isinstance(term, Literal):
        raise InvalidSpec("value", f"valor não literal: {term}")
    return Decimal(term.lexical)


def _derive_specs(graph: Graph) -> dict[str, ServiceSpec]:
    specs: dict[str, ServiceSpec] = {}
    for row in _run("service-list.rq", graph):
        name = str(row["label"])
        if row["service"] != catalog_node(name):
            continue
        category = str(row["category"]).rsplit("#", 1)[-1]
        resource, subclass = _resource_chain(graph, name)
        values = _kpis_from_graph(graph, name)
        try:
            specs[name] = ServiceSpec(
                name=name,
                category=ServiceCategory(category),
                resource=resource,
                qi5G=int(_number(values["met:qi5G"])),
                priority=int(_number(values["met:priority"])),
                pdb_ms=_number(values["kpi:latency"]),
                per=_number(values["kpi:packeterrorrate"]),
                gbr_rate_bps=_number(values["met:gbrRate"]) if "met:gbrRate" in values else None,
                resource_subclass=subclass,
            )
        except KeyError as e:
            raise InvalidSpec(str(e.args[0]), f"KPI ausente no serviço {name}") from e
        except ValidationError as e:
            raise _invalid_spec(e) from e
    return specs


def _parameter_triples(node: Iri, definition: KpiDefinition, value: Decimal) -> list[Triple]:
    parameter, holder = fresh_blank(), fresh_blank()
    return [
        Triple(node, icm("hasParameter"), parameter),
        Triple(parameter, RDF_TYPE_IRI, Iri(definition.parameter_class)),
        Triple(parameter, icm("valueBy"), holder),
        Triple(holder, definition.term, Literal(decimal_lexical(value), definition.datatype)),
    ]


def _with_default_gbr_rates(graph: Graph, rate: Decimal) -> Graph:
    gbr_rate = kpi_by_name("met:gbrRate")
    added: list[Triple] = []
    for row in _run("service-list.rq", graph):
        name = str(row["label"])
        if _resource_chain(graph, name)[0] is not ResourceKind.GBR:
            continue
        if "met:gbrRate" in _kpis_from_graph(graph, name):
            continue
        added.extend(_parameter_triples(catalog_node(name), gbr_rate, rate))
        added.append(Triple(service(f"{name}Reporter"), icm("reportingParameter"), gbr_rate.term))
    return graph.insert_all(added) if added else graph


# ==================== Carga e exportação ====================


def catalog_from_graph(graph: Graph) -> Catalog:
    """Constrói o catálogo a partir de um grafo já completo."""
    return Catalog(graph=graph.with_prefixes(PREFIXES), specs=_derive_specs(graph))


def load_builtin(gbr_rate_bps: Optional[Union[int, Decimal]] = None) -> Catalog:
    """
    Carrega o catálogo embarcado (11 serviços da tabela 5QI).

    Serviços GBR sem met:gbrRate recebem a taxa padrão
    (settings.default_gbr_rate_bps).

    Args:
        gbr_rate_bps: Taxa GBR padrão (opcional)

    Returns:
        Catalog: Catálogo com grafo e registros

    Example:
        >>> load_builtin().specs["ConvVideo"].pdb_ms
        Decimal('150')
    """
    graph = Graph(prefixes=PREFIXES)
    for name in BUILTIN_MODELS:
        graph = graph.merge(parse_turtle((RESOURCES_DIR / name).read_text(encoding="utf-8")))
    rate = Decimal(gbr_rate_bps if gbr_rate_bps is not None else settings.default_gbr_rate_bps)
    catalog = catalog_from_graph(_with_default_gbr_rates(graph, rate))
    logger.info(f"Catálogo embarcado carregado: {len(catalog.specs)} serviços")
    return catalog


def load_catalog(path: Optional[Path] = None) -> Catalog:
    """
    Carrega um catálogo Turtle (ex.: gerado por `extend`); sem caminho, o embarcado.

    Raises:
        TurtleSyntaxError / UnknownPrefix: Arquivo Turtle inválido
        InvalidConfig: Arquivo inexistente ou fora de UTF-8
    """
    if path is None:
        return load_builtin()
    if not Path(path).is_file():
        raise InvalidConfig("catalog", f"arquivo não encontrado: {path}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InvalidConfig("catalog", f"arquivo não é UTF-8: {path}") from e
    graph = parse_turtle(text)
    catalog = catalog_from_graph(graph)
    logger.info(f"Catálogo carregado de {path}: {len(catalog.specs)} serviços")
    return catalog


def dump_catalog(catalog: Catalog) -> str:
    """Serializa o grafo do catálogo em Turtle."""
    return serialize_turtle(catalog.graph)


def catalog_to_json(catalog: Catalog) -> str:
    """Espelho JSON dos registros ServiceSpec (lista ordenada por nome)."""
    records = [spec.model_dump(mode="json", by_alias=True) for spec in catalog.specs.values()]
    return json.dumps(records, indent=2, ensure_ascii=False)


# ==================== Extensão ====================


def _invalid_spec(error: ValidationError) -> InvalidSpec:
    first = error.errors()[0]
    message = str(first["msg"]).removeprefix("Value error, ")
    if first["loc"]:
        field_name = str(first["loc"][0])
    else:
        field_name, _, message = message.partition(": ")
    if field_name == "qi5G":
        field_name = "qi5g"
    return InvalidSpec(field_name, message)


def parse_service_spec(data: Union[ServiceSpec, Mapping[str, Any]]) -> ServiceSpec:
    """
    Valida dados brutos (ex.: JSON de `extend --spec`) como ServiceSpec.

    Raises:
        InvalidSpec: Com o nome do primeiro campo inválido

    Example:
        >>> parse_service_spec({"name": "X", "resource": "GBR", ...})
    """
    raw = data.model_dump(by_alias=True) if isinstance(data, ServiceSpec) else dict(data)
    try:
        return ServiceSpec.model_validate(raw)
    except ValidationError as e:
        raise _invalid_spec(e) from e


def register_service(
    catalog: Catalog, spec: Union[ServiceSpec, Mapping[str, Any]]
) -> Catalog:
    """
    Registra um novo serviço seguindo os quatro passos de extensão.

    1. Recurso: subclasse de icm:Target (nova, se resource_subclass)
    2. KPIs: subclasses de icm:PropertyParameter com expectativa
    3. Serviço: nó do catálogo ligado ao recurso e aos literais de KPI
    4. Relatório: subclasse de icm:RequirementReporter com os parâmetros

    O template de extração de KPI funciona para o novo serviço sem alteração.

    Args:
        catalog: Catálogo atual (não é modificado)
        spec: Especificação do serviço

    Returns:
        Catalog: Novo catálogo com o serviço

    Raises:
        DuplicateService: Nome já existe
        InvalidSpec: Especificação inválida
    """
    spec = parse_service_spec(spec)
    if spec.name in catalog.specs or catalog.graph.objects(catalog_node(spec.name), RDF_TYPE_IRI):
        raise DuplicateService(spec.name)

    prefix = _CATEGORY_PREFIX[spec.category]
    triples: list[Triple] = []

    # Passo 1: tipo de recurso
    parent = target(spec.resource.value)
    if spec.resource_subclass:
        subclass = target(spec.resource_subclass)
        service_class = service(f"{prefix}{spec.resource_subclass}Service")
        triples += [
            Triple(subclass, RDF_TYPE_IRI, Iri(RDFS + "Class")),
            Triple(subclass, SUBCLASS_OF, parent),
            Triple(service_class, RDF_TYPE_IRI, Iri(RDFS + "Class")),
            Triple(service_class, SUBCLASS_OF, subclass),
        ]
    else:
        service_class = service(f"{prefix}{spec.resource.value}Service")
        triples += [
            Triple(service_class, RDF_TYPE_IRI, Iri(RDFS + "Class")),
            Triple(service_class, SUBCLASS_OF, parent),
        ]
    triples.append(Triple(service_class, service("category"), service(spec.category.value)))

    # Passo 2: parâmetros de KPI
    values = {definition: getattr(spec, definition.spec_field) for definition in KPIS}
    values = {definition: value for definition, value in values.items() if value is not None}
    for definition in values:
        triples.append(Triple(Iri(definition.parameter_class), SUBCLASS_OF, icm("PropertyParameter")))

    # Passo 3: nó do serviço
    node = catalog_node(spec.name)
    triples += [
        Triple(node, RDF_TYPE_IRI, service_class),
        Triple(node, LABEL, Literal(spec.name)),
        Triple(Iri(f"{CATALOG}{spec.name}Expectation"), RDF_TYPE_IRI, icm("PropertyExpectation")),
        Triple(Iri(f"{CATALOG}{spec.name}Expectation"), icm("target"), node),
    ]
    for definition, value in values.items():
        triples += _parameter_triples(node, definition, Decimal(value))

    # Passo 4: reporter
    reporter = service(f"{spec.name}Reporter")
    triples.append(Triple(reporter, SUBCLASS_OF, icm("RequirementReporter")))
    for definition in values:
        triples.append(Triple(reporter, icm("reportingParameter"), definition.term))

    extended = Catalog(graph=catalog.graph.insert_all(triples), specs={**catalog.specs, spec.name: spec})
    logger.info(f"Serviço {spec.name} registrado ({spec.resource.value}, classe {service_class.value})")
    return extended
