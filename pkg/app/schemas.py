"""
Pydantic schemas for the records exchanged between layers.

Este módulo define os schemas Pydantic do intent-forge, garantindo type safety
e validação automática dos registros que cruzam as camadas:

Schemas incluem:
- Catalog: ServiceSpec (entrada do catálogo de serviços)
- Intent: UserIntent, ServiceIntent, NetworkIntent
- Resources: ResourceState e resultados de validação (Admitted / Conflict)
- Simulation: SimConfig, FlowProfile, PacketRecord, FlowRecord, KpiMeasurement
- Reporting: ComplianceVerdict, IntentReport, ReportSummary

Valores de KPI usam Decimal (modelo de valor exato); tempos do simulador
usam float em milissegundos.
"""

from decimal import Decimal
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models import (
    ComplianceReason,
    ComplianceStatus,
    IntentState,
    ResourceKind,
    ServiceCategory,
    StateEvent,
)
from app.rdf.graph import Graph


# ==================== Catalog Schemas ====================


class Quantity(BaseModel):
    """
    Valor numérico com unidade.

    Attributes:
        value: Valor exato
        unit: Unidade ("ms", "bit/s" ou "" para adimensional)

    Example:
        >>> Quantity(value=Decimal("150"), unit="ms")
    """

    value: Decimal
    unit: str = ""

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        text = format(self.value, "f")
        return f"{text} {self.unit}" if self.unit else text


class ServiceSpec(BaseModel):
    """
    Entrada do catálogo de serviços (linha da tabela 5QI).

    Attributes:
        name: Identificador único do serviço (ex.: ConvVideo)
        category: MissionCritical ou NonMissionCritical
        resource: GBR ou NGBR
        qi5g: Código 5QI
        priority: Nível de prioridade (menor = mais importante)
        pdb_ms: Packet delay budget em milissegundos (SLO de latência)
        per: Packet error rate alvo (0 a 1)
        gbr_rate_bps: Taxa garantida (bits/s), obrigatória se e só se GBR
        resource_subclass: Subclasse nova de icm:Target (ex.: DelayCriticalGBR)

    Example:
        >>> spec = ServiceSpec(
        >>>     name="DiscreteAutomation",
        >>>     category="NonMissionCritical",
        >>>     resource="GBR",
        >>>     qi5G=82,
        >>>     priority=19,
        >>>     pdb_ms=10,
        >>>     per=Decimal("0.0001"),
        >>>     gbr_rate_bps=1000000,
        >>> )
    """

    name: str = Field(..., pattern=r"^[A-Za-z][A-Za-z0-9_]*$")
    category: ServiceCategory
    resource: ResourceKind
    qi5g: int = Field(..., gt=0, alias="qi5G")
    priority: int = Field(..., gt=0)
    pdb_ms: Decimal = Field(..., gt=0)
    per: Decimal = Field(..., ge=0, le=1)
    gbr_rate_bps: Optional[Decimal] = Field(default=None, gt=0)
    resource_subclass: Optional[str] = Field(
        default=None, pattern=r"^[A-Za-z][A-Za-z0-9_]*$"
    )

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @model_validator(mode="after")
    def check_gbr_rate(self) -> "ServiceSpec":
        """Taxa GBR presente se e somente se o recurso for GBR."""
        if self.resource is ResourceKind.GBR and self.gbr_rate_bps is None:
            raise ValueError("gbr_rate_bps: obrigatório para serviços GBR")
        if self.resource is ResourceKind.NGBR and self.gbr_rate_bps is not None:
            raise ValueError("gbr_rate_bps: permitido apenas para serviços GBR")
        return self


# ==================== Intent Schemas ====================


class UserIntent(BaseModel):
    """
    Intenção declarada pelo usuário, com o serviço reconhecido.

    Attributes:
        raw_text: Texto original
        recognized_service: Serviço do catálogo reconhecido no texto
        requester: Quem fez o pedido
    """

    raw_text: str = Field(..., min_length=1)
    recognized_service: str
    requester: str = "user"

    model_config = ConfigDict(frozen=True)


class ServiceIntent(BaseModel):
    """
    Intenção de serviço: grafo ICM com expectativas de entrega e propriedade.

    Attributes:
        intent_id: Identificador (I-<serviço>-<n>)
        graph: Grafo com um único icm:Intent
        service: Serviço alvo
        reporting_params: KPIs a reportar (CURIEs, ex.: kpi:latency)
    """

    intent_id: str
    graph: Graph
    service: str
    reporting_params: list[str] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class NetworkIntent(BaseModel):
    """
    Intenção de rede pronta para implantação.

    Attributes:
        intent_id: Identificador da intenção
        service: Serviço alvo
        resource: Classe de recurso (GBR/NGBR)
        thresholds: Limiar por KPI (CURIE -> Quantity)
        priority: Prioridade 5QI
        qi5g: Código 5QI
        gbr_rate_bps: Taxa garantida (somente GBR)
        state: Estado do ciclo de vida (muda apenas via advance_state)
    """

    intent_id: str
    service: str
    resource: ResourceKind
    thresholds: dict[str, Quantity]
    priority: int
    qi5g: int = Field(..., alias="qi5G")
    gbr_rate_bps: Optional[Decimal] = None
    state: IntentState = IntentState.RECEIVED

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @field_validator("thresholds")
    @classmethod
    def check_required_thresholds(cls, value: dict[str, Quantity]) -> dict[str, Quantity]:
        """Latência e PER são obrigatórios."""
        missing = {"kpi:latency", "kpi:packeterrorrate"} - value.keys()
        if missing:
            raise ValueError(f"limiares obrigatórios ausentes: {sorted(missing)}")
        return value


# ==================== Resource Schemas ====================


class ResourceState(BaseModel):
    """
    Catálogo de recursos disponíveis e utilizados no enlace gargalo.

    Attributes:
        link_capacity_bps: Capacidade do enlace
        committed_gbr_bps: Soma das taxas GBR admitidas
        deployed: Intenções admitidas
    """

    link_capacity_bps: Decimal = Field(..., gt=0)
    committed_gbr_bps: Decimal = Field(default=Decimal(0), ge=0)
    deployed: frozenset[str] = frozenset()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_commitment(self) -> "ResourceState":
        """A taxa comprometida nunca excede a capacidade."""
        if self.committed_gbr_bps > self.link_capacity_bps:
            raise ValueError("committed_gbr_bps excede link_capacity_bps")
        return self


class Admitted(BaseModel):
    """Intenção admitida; carrega o novo estado de recursos."""

    state: ResourceState

    model_config = ConfigDict(frozen=True)


class Conflict(BaseModel):
    """Intenção rejeitada por conflito de recursos."""

    reason: str

    model_config = ConfigDict(frozen=True)


ValidationOutcome = Union[Admitted, Conflict]


# ==================== Simulation Schemas ====================


class FlowProfile(BaseModel):
    """
    Perfil de tráfego de um serviço (sobrescreve os valores base).

    Attributes:
        packet_bytes: Tamanho base do pacote
        interval_ms: Intervalo entre pacotes
    """

    packet_bytes: Optional[int] = Field(default=None, gt=0)
    interval_ms: Optional[float] = Field(default=None, gt=0)

    model_config = ConfigDict(frozen=True)


class SimConfig(BaseModel):
    """
    Configuração do simulador de eventos discretos.

    Attributes:
        link_capacity_bps: Capacidade do enlace gargalo
        duration_s: Duração da geração de tráfego
        seed: Semente do gerador de perdas
        base_packet_bytes: Tamanho base dos pacotes
        packet_interval_ms: Intervalo base entre pacotes
        congestion_factor: Multiplicador do tamanho dos pacotes (1 = normal)
        congested_factor: Fator aplicado pelo cenário congested
        queue_limit_pkts: Limite de cada fila (pacotes)
        prop_delay_ms: Atraso de propagação
        loss_model: Probabilidade de perda por pacote no enlace
        flow_profiles: Perfis de tráfego por serviço
        report_interval_s: Intervalo do relatório periódico (opcional)
    """

    link_capacity_bps: float = Field(default=100e6, gt=0)
    duration_s: float = Field(default=1.0, gt=0)
    seed: int = Field(default=2023, ge=0, lt=2**64)
    base_packet_bytes: int = Field(default=500, gt=0)
    packet_interval_ms: float = Field(default=10.0, gt=0)
    congestion_factor: float = Field(default=1.0, ge=1)
    congested_factor: float = Field(default=12.0, ge=1)
    queue_limit_pkts: int = Field(default=100, gt=0)
    prop_delay_ms: float = Field(default=5.0, ge=0)
    loss_model: float = Field(default=0.0, ge=0, lt=1)
    flow_profiles: dict[str, FlowProfile] = Field(default_factory=dict)
    report_interval_s: Optional[float] = Field(default=None, gt=0)

    model_config = ConfigDict(frozen=True)


class PacketRecord(BaseModel):
    """
    Registro de um pacote.

    Attributes:
        seq: Número de sequência no fluxo
        send_ms: Instante de envio
        deliver_ms: Instante de entrega (None = descartado)
        size_bytes: Tamanho transmitido
    """

    seq: int
    send_ms: float
    deliver_ms: Optional[float] = None
    size_bytes: int

    model_config = ConfigDict(frozen=True)

    @property
    def dropped(self) -> bool:
        return self.deliver_ms is None

    @property
    def delay_ms(self) -> Optional[float]:
        return None if self.deliver_ms is None else self.deliver_ms - self.send_ms


class FlowRecord(BaseModel):
    """
    Registro de um fluxo simulado (uma intenção).

    Attributes:
        intent_id: Intenção dona do fluxo
        service: Serviço
        priority: Prioridade do serviço
        resource: GBR ou NGBR
        packets: Pacotes em ordem de envio
    """

    intent_id: str
    service: str
    priority: int
    resource: ResourceKind
    packets: list[PacketRecord] = Field(default_factory=list)

    @property
    def sent(self) -> int:
        return len(self.packets)

    @property
    def delivered(self) -> int:
        return sum(1 for packet in self.packets if not packet.dropped)

    @property
    def dropped(self) -> int:
        return self.sent - self.delivered


class KpiMeasurement(BaseModel):
    """
    KPIs observados de um fluxo.

    Attributes:
        intent_id: Intenção medida
        latency_ms: Atraso médio (None = não observável)
        jitter_ms: Média das diferenças absolutas consecutivas (None = não observável)
        per_observed: Descartados / enviados
        samples: Pacotes entregues (amostras de atraso)
        sent: Pacotes enviados
        window_start_ms / window_end_ms: Janela medida (modo periódico)
    """

    intent_id: str
    latency_ms: Optional[float] = Field(default=None, ge=0)
    jitter_ms: Optional[float] = Field(default=None, ge=0)
    per_observed: float = Field(..., ge=0, le=1)
    samples: int = Field(..., ge=0)
    sent: int = Field(..., gt=0)
    window_start_ms: Optional[float] = None
    window_end_ms: Optional[float] = None


# ==================== Reporting Schemas ====================


class ComplianceVerdict(BaseModel):
    """
    Julgamento de um KPI contra o limiar da intenção.

    Attributes:
        kpi: CURIE do KPI (ex.: kpi:latency)
        observed: Valor observado (None = não observável)
        threshold: Limiar da intenção
        unit: Unidade comum de observed e threshold
        status: Compliant ou Degraded
        reason: ReasonMeetsRequirement ou ReasonNotCompliant
    """

    kpi: str
    observed: Optional[Decimal]
    threshold: Decimal
    unit: str = ""
    status: ComplianceStatus
    reason: ComplianceReason

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_reason(self) -> "ComplianceVerdict":
        """Compliant <=> ReasonMeetsRequirement."""
        compliant = self.status is ComplianceStatus.COMPLIANT
        meets = self.reason is ComplianceReason.MEETS_REQUIREMENT
        if compliant != meets:
            raise ValueError(f"razão {self.reason.value} incompatível com {self.status.value}")
        return self


class IntentReport(BaseModel):
    """
    Relatório de intenção (icm:IntentReport).

    Attributes:
        intent_id: Intenção reportada
        report_number: Número sequencial do relatório
        expectation_reports: Grafos dos relatórios de expectativa
        verdicts: Veredictos extraídos dos relatórios de expectativa
        state_event: StateComplies ou StateDegrades
        timestamp_ms: Instante simulado do relatório
        graph: Grafo completo do relatório
    """

    intent_id: str
    report_number: int = 1
    expectation_reports: list[Graph] = Field(..., min_length=1)
    verdicts: list[ComplianceVerdict]
    state_event: StateEvent
    timestamp_ms: float
    graph: Graph

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ReportSummary(BaseModel):
    """Resumo JSON de um relatório, escrito ao lado do .ttl."""

    intent_id: str
    service: str
    state_event: StateEvent
    timestamp_ms: float
    verdicts: list[ComplianceVerdict]
