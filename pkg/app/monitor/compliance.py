"""
Compliance evaluation of measured KPIs against network-intent thresholds.

Os valores observados são quantizados antes da comparação (latência em
0.0001 ms, PER em 1e-9, ROUND_HALF_EVEN); o valor quantizado é o mesmo que
aparece no relatório, então reler o relatório reproduz o veredicto.
Igualdade com o limiar conta como conforme.
"""

import logging
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Optional

from app.core.exceptions import MissingThreshold, UnitMismatch
from app.knowledge.vocabulary import KPIS, LATENCY, PACKET_ERROR_RATE, KpiDefinition, decimal_lexical
from app.models import ComplianceReason, ComplianceStatus
from app.schemas import ComplianceVerdict, KpiMeasurement, NetworkIntent

logger = logging.getLogger(__name__)

UNOBSERVABLE = "unobservable"

# Menor incremento representável por KPI medido
STEPS: dict[str, Decimal] = {
    LATENCY.curie: Decimal("0.0001"),
    PACKET_ERROR_RATE.curie: Decimal("1e-9"),
}


def quantize(kpi: str, value: Optional[float]) -> Optional[Decimal]:
    """
    Converte uma observação para o modelo de valores decimal.

    Example:
        >>> quantize("kpi:latency", 493.10968)
        Decimal('493.1097')
    """
    if value is None:
        return None
    return Decimal(repr(float(value))).quantize(STEPS[kpi], rounding=ROUND_HALF_EVEN)


def _observed(definition: KpiDefinition, measurement: KpiMeasurement) -> Optional[Decimal]:
    if definition is LATENCY:
        return quantize(definition.curie, measurement.latency_ms)
    return quantize(definition.curie, measurement.per_observed)


def verdict(kpi: str, observed: Optional[Decimal], threshold: Decimal, unit: str = "") -> ComplianceVerdict:
    """Veredicto de um KPI: conforme se observed <= threshold; não observável é degradado."""
    compliant = observed is not None and observed <= threshold
    return ComplianceVerdict(
        kpi=kpi,
        observed=observed,
        threshold=threshold,
        unit=unit,
        status=ComplianceStatus.COMPLIANT if compliant else ComplianceStatus.DEGRADED,
        reason=ComplianceReason.MEETS_REQUIREMENT if compliant else ComplianceReason.NOT_COMPLIANT,
    )


def judge(measurement: KpiMeasurement, intent: NetworkIntent) -> list[ComplianceVerdict]:
    """
    Julga os KPIs medidos (latência e PER) contra os limiares da intenção.

    Args:
        measurement: KPIs observados do fluxo
        intent: Intenção de rede com os limiares

    Returns:
        list[ComplianceVerdict]: Um veredicto por KPI medido, na ordem da tabela de KPIs

    Raises:
        MissingThreshold: Intenção sem limiar para um KPI medido
        UnitMismatch: Unidade do limiar diferente da unidade medida

    Example:
        >>> [v.status.value for v in judge(measurement, intent)]
        ['Degraded', 'Compliant']
    """
    verdicts = []
    for definition in KPIS:
        if not definition.measured:
            continue
        threshold = intent.thresholds.get(definition.curie)
        if threshold is None:
            raise MissingThreshold(definition.curie)
        if threshold.unit != definition.unit:
            raise UnitMismatch(definition.curie)
        verdicts.append(
            verdict(definition.curie, _observed(definition, measurement), threshold.value, definition.unit)
        )

    degraded = [v.kpi for v in verdicts if v.status is ComplianceStatus.DEGRADED]
    if degraded:
        logger.info(f"{intent.intent_id}: KPIs degradados {degraded}")
    return verdicts


# ==================== Formatação ====================


def format_value(value: Optional[Decimal], unit: str = "") -> str:
    """
    Forma textual de um valor observado, como aparece no relatório.

    Example:
        >>> format_value(Decimal("493.1097"), "ms")
        '493.1097 ms'
        >>> format_value(Decimal("0E-9"))
        '0'
    """
    if value is None:
        return UNOBSERVABLE
    if unit:
        return f"{value.quantize(STEPS[LATENCY.curie], rounding=ROUND_HALF_EVEN):f} {unit}"
    return decimal_lexical(value)


def parse_value(text: str, unit: str = "") -> Optional[Decimal]:
    """
    Inverso de format_value.

    Raises:
        ValueError: Texto sem número ou com unidade diferente
    """
    text = text.strip()
    if text == UNOBSERVABLE:
        return None
    if unit:
        number, _, suffix = text.rpartition(" ")
        if suffix != unit:
            raise ValueError(f"unidade esperada '{unit}' em '{text}'")
        text = number
    try:
        return Decimal(text)
    except ArithmeticError as e:
        raise ValueError(f"valor inválido: '{text}'") from e
