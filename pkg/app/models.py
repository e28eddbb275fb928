"""
Domain enumerations.

Este módulo define os enums compartilhados entre as camadas do intent-forge:
- ResourceKind: Tipo de recurso (GBR / NGBR)
- ServiceCategory: Missão crítica ou não
- IntentState: Estados do ciclo de vida da intenção
- LifecycleEvent: Eventos que movem o ciclo de vida
- ComplianceStatus / ComplianceReason: Julgamento por KPI
- StateEvent: Evento de estado publicado no relatório de intenção
- Scenario: Cenários de simulação

Todos herdam de (str, enum.Enum) para serializar direto em JSON.
"""

import enum


class ResourceKind(str, enum.Enum):
    """
    Tipos de recurso alvo (subclasses de icm:Target).

    Attributes:
        GBR: Guaranteed bit rate
        NGBR: Non-guaranteed bit rate
    """

    GBR = "GBR"
    NGBR = "NGBR"


class ServiceCategory(str, enum.Enum):
    """
    Categoria do serviço.

    Attributes:
        MISSION_CRITICAL: Serviços de missão crítica (MCPTT)
        NON_MISSION_CRITICAL: Demais serviços
    """

    MISSION_CRITICAL = "MissionCritical"
    NON_MISSION_CRITICAL = "NonMissionCritical"


class IntentState(str, enum.Enum):
    """
    Estados do ciclo de vida de uma intenção.

    Attributes:
        RECEIVED: Intenção recebida e traduzida
        COMPLIANT: Último relatório conforme
        DEGRADED: Último relatório com KPI degradado
        UPDATED: Intenção atualizada, aguardando novo relatório
        FINALIZED: Estado terminal
    """

    RECEIVED = "Received"
    COMPLIANT = "Compliant"
    DEGRADED = "Degraded"
    UPDATED = "Updated"
    FINALIZED = "Finalized"


class LifecycleEvent(str, enum.Enum):
    """Eventos aceitos pela máquina de estados da intenção."""

    REPORT_COMPLIANT = "ReportCompliant"
    REPORT_DEGRADED = "ReportDegraded"
    UPDATE = "Update"
    FINALIZE = "Finalize"


class ComplianceStatus(str, enum.Enum):
    """Resultado do julgamento de um KPI."""

    COMPLIANT = "Compliant"
    DEGRADED = "Degraded"


class ComplianceReason(str, enum.Enum):
    """Razão ICM associada ao julgamento (icm:reason)."""

    MEETS_REQUIREMENT = "ReasonMeetsRequirement"
    NOT_COMPLIANT = "ReasonNotCompliant"


class StateEvent(str, enum.Enum):
    """Evento de estado publicado no relatório (vocabulário imo:)."""

    STATE_COMPLIES = "StateComplies"
    STATE_DEGRADES = "StateDegrades"


class Scenario(str, enum.Enum):
    """Cenários de simulação."""

    NORMAL = "normal"
    CONGESTED = "congested"
