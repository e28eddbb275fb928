"""
Intent lifecycle state machine.

Tabela de transições:
- Received/Compliant/Degraded/Updated + ReportCompliant -> Compliant
- Received/Compliant/Degraded/Updated + ReportDegraded  -> Degraded
- Received/Compliant/Degraded/Updated + Update          -> Updated
- qualquer estado + Finalize                            -> Finalized

Finalized é terminal: só aceita Finalize (idempotente).
"""

import logging

from app.core.exceptions import IllegalTransition
from app.knowledge.vocabulary import icm
from app.models import IntentState, LifecycleEvent
from app.rdf.terms import Iri
from app.schemas import NetworkIntent

logger = logging.getLogger(__name__)

_ACTIVE = (IntentState.RECEIVED, IntentState.COMPLIANT, IntentState.DEGRADED, IntentState.UPDATED)

_TRIGGERS = {
    LifecycleEvent.REPORT_COMPLIANT: IntentState.COMPLIANT,
    LifecycleEvent.REPORT_DEGRADED: IntentState.DEGRADED,
    LifecycleEvent.UPDATE: IntentState.UPDATED,
    LifecycleEvent.FINALIZE: IntentState.FINALIZED,
}

TRANSITIONS: list[dict] = [
    {"source": source, "trigger": trigger, "target": target}
    for source in _ACTIVE
    for trigger, target in _TRIGGERS.items()
] + [
    {
        "source": IntentState.FINALIZED,
        "trigger": LifecycleEvent.FINALIZE,
        "target": IntentState.FINALIZED,
    },
]

_TABLE = {(t["source"], t["trigger"]): t["target"] for t in TRANSITIONS}

# Eventos de estado ICM publicados no grafo da intenção
STATE_IRIS: dict[IntentState, Iri] = {
    IntentState.RECEIVED: icm("IntentStateReceived"),
    IntentState.COMPLIANT: icm("IntentStateCompliant"),
    IntentState.DEGRADED: icm("StateDegraded"),
    IntentState.UPDATED: icm("StateUpdated"),
    IntentState.FINALIZED: icm("StateFinalized"),
}


def advance_state(state: IntentState, event: LifecycleEvent) -> IntentState:
    """
    Aplica um evento ao estado da intenção.

    Raises:
        IllegalTransition: Evento diferente de Finalize após Finalized

    Example:
        >>> advance_state(IntentState.RECEIVED, LifecycleEvent.REPORT_COMPLIANT)
        <IntentState.COMPLIANT: 'Compliant'>
    """
    state, event = IntentState(state), LifecycleEvent(event)
    try:
        return _TABLE[(state, event)]
    except KeyError:
        raise IllegalTransition(state.value, event.value) from None


def apply_event(intent: NetworkIntent, event: LifecycleEvent) -> NetworkIntent:
    """Devolve a intenção com o novo estado (a original não é alterada)."""
    target = advance_state(intent.state, event)
    logger.info(f"Intenção {intent.intent_id}: {intent.state.value} --{LifecycleEvent(event).value}--> {target.value}")
    return intent.model_copy(update={"state": target})
