"""
Resource validation of network intents (network layer).

Regra de capacidade usada como consulta de validação de recursos:
- GBR: admitida se committed_gbr_bps + taxa <= link_capacity_bps
- NGBR: sempre admitida, sem reserva
- intent_id já implantado: conflito
"""

import logging
from decimal import Decimal

from app.models import ResourceKind
from app.schemas import Admitted, Conflict, NetworkIntent, ResourceState, ValidationOutcome

logger = logging.getLogger(__name__)


def initial_state(link_capacity_bps: float) -> ResourceState:
    """Estado de recursos vazio para um enlace."""
    return ResourceState(link_capacity_bps=Decimal(str(link_capacity_bps)))


def validate(intent: NetworkIntent, state: ResourceState) -> ValidationOutcome:
    """
    Verifica conflitos de alocação de recursos.

    Args:
        intent: Intenção de rede a implantar
        state: Estado atual dos recursos (não é alterado)

    Returns:
        Admitted(novo estado) ou Conflict(motivo)

    Example:
        >>> validate(intent, initial_state(100e6))
        Admitted(state=ResourceState(..., committed_gbr_bps=Decimal('1000000'), ...))
    """
    if intent.intent_id in state.deployed:
        logger.warning(f"Intenção {intent.intent_id} rejeitada: já implantada")
        return Conflict(reason=f"intent {intent.intent_id} already deployed")

    committed = state.committed_gbr_bps
    if intent.resource is ResourceKind.GBR:
        rate = intent.gbr_rate_bps
        if rate is None:
            return Conflict(reason="missing GBR rate")
        if committed + rate > state.link_capacity_bps:
            logger.warning(
                f"Intenção {intent.intent_id} rejeitada: {committed} + {rate} > {state.link_capacity_bps} bit/s"
            )
            return Conflict(reason="insufficient GBR capacity")
        committed += rate

    admitted = ResourceState(
        link_capacity_bps=state.link_capacity_bps,
        committed_gbr_bps=committed,
        deployed=state.deployed | {intent.intent_id},
    )
    logger.info(f"Intenção {intent.intent_id} admitida ({intent.resource.value}), GBR comprometido: {committed} bit/s")
    return Admitted(state=admitted)
