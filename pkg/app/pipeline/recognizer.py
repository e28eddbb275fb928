"""
Keyword recognition of user intents (application layer).

Reconhecimento determinístico por palavras-chave: o texto é normalizado em
tokens minúsculos e comparado com os nomes dos serviços do catálogo (inteiros
ou quebrados em palavras, ex.: "conv video") e com a tabela de aliases
embarcada (ex.: "mission critical voice" -> McpttVoice). Vence o alias mais
longo; sobreposições menores são descartadas.
"""

import json
import logging
import re
from functools import lru_cache
from typing import Optional

from app.core.config import settings
from app.core.exceptions import AmbiguousIntent, NoServiceRecognized
from app.knowledge.catalog import RESOURCES_DIR, Catalog
from app.schemas import UserIntent

logger = logging.getLogger(__name__)

ALIASES_PATH = RESOURCES_DIR / "aliases.json"

_TOKEN = re.compile(r"[a-z0-9]+")
_CAMEL = re.compile(r"[A-Z]+(?![a-z])|[A-Z]?[a-z]+|\d+")


def tokens(text: str) -> tuple[str, ...]:
    return tuple(_TOKEN.findall(text.lower()))


@lru_cache(maxsize=1)
def load_aliases() -> dict[str, str]:
    """Tabela de aliases embarcada (frase -> serviço)."""
    return json.loads(ALIASES_PATH.read_text(encoding="utf-8"))


def _phrases(catalog: Catalog) -> dict[tuple[str, ...], str]:
    phrases: dict[tuple[str, ...], str] = {}
    for name in catalog.specs:
        phrases[(name.lower(),)] = name
        phrases.setdefault(tuple(word.lower() for word in _CAMEL.findall(name)), name)
    for alias, service_name in load_aliases().items():
        if service_name in catalog.specs:
            phrases.setdefault(tokens(alias), service_name)
    return phrases


def recognize(raw_text: str, catalog: Catalog, requester: Optional[str] = None) -> UserIntent:
    """
    Reconhece o serviço pedido no texto da intenção.

    Args:
        raw_text: Texto livre do usuário
        catalog: Catálogo de serviços
        requester: Solicitante (padrão: settings.default_requester)

    Returns:
        UserIntent: Intenção com o serviço reconhecido

    Raises:
        NoServiceRecognized: Nenhum serviço no texto
        AmbiguousIntent: Mais de um serviço no texto

    Example:
        >>> recognize("I need Mission Critical Voice for my team", load_builtin()).recognized_service
        'McpttVoice'
    """
    words = tokens(raw_text)
    if not words:
        raise NoServiceRecognized(raw_text)

    matches: list[tuple[int, int, str]] = []
    for phrase, service_name in _phrases(catalog).items():
        size = len(phrase)
        for start in range(len(words) - size + 1):
            if words[start:start + size] == phrase:
                matches.append((size, start, service_name))

    # Mais longo primeiro, sem sobreposição
    taken: set[int] = set()
    found: set[str] = set()
    for size, start, service_name in sorted(matches, key=lambda m: (-m[0], m[1], m[2])):
        span = set(range(start, start + size))
        if span & taken:
            continue
        taken |= span
        found.add(service_name)

    if not found:
        raise NoServiceRecognized(raw_text)
    if len(found) > 1:
        raise AmbiguousIntent(sorted(found))

    service_name = found.pop()
    logger.info(f"Serviço reconhecido: '{raw_text}' -> {service_name}")
    return UserIntent(
        raw_text=raw_text,
        recognized_service=service_name,
        requester=requester or settings.default_requester,
    )
