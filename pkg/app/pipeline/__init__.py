"""
Intent pipeline: recognition, service/network intents, validation, lifecycle.
"""

from app.pipeline.intents import (
    IntentIdGenerator,
    build_network_intent,
    build_service_intent,
    network_intent_graph,
    network_intent_to_json,
    network_intent_to_turtle,
)
from app.pipeline.lifecycle import STATE_IRIS, TRANSITIONS, advance_state, apply_event
from app.pipeline.recognizer import recognize
from app.pipeline.validation import initial_state, validate

__all__ = [
    "IntentIdGenerator",
    "STATE_IRIS",
    "TRANSITIONS",
    "advance_state",
    "apply_event",
    "build_network_intent",
    "build_service_intent",
    "initial_state",
    "network_intent_graph",
    "network_intent_to_json",
    "network_intent_to_turtle",
    "recognize",
    "validate",
]
