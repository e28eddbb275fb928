"""
RDF term model.

Este módulo define os átomos RDF usados em todo o intent-forge:
- Iri: IRI absoluto
- BlankNode: nó anônimo (escopo por grafo)
- Literal: forma léxica + datatype (+ language tag opcional)
- Triple: (sujeito, predicado, objeto)

Literais são comparados por (forma léxica, datatype, idioma), sem
canonicalização de valor: "01" e "1" são termos diferentes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from app.core.exceptions import MalformedTerm

# ==================== Namespaces padrão ====================

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF + "type"
RDF_LANGSTRING = RDF + "langString"
XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"

_WHITESPACE = re.compile(r"\s")
# Caracteres proibidos em IRIREF (Turtle/SPARQL), além de espaços
_IRI_FORBIDDEN = re.compile(r"[\s<>\"{}|^`\\]")
_LANGUAGE = re.compile(r"^[A-Za-z]+(?:-[A-Za-z0-9]+)*$")

# Contador global de blank nodes frescos
_fresh_ids = itertools.count(1)


def escape_string(text: str) -> str:
    """Escapa uma forma léxica para aspas duplas Turtle/SPARQL."""
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


# ==================== Termos ====================


@dataclass(frozen=True, slots=True)
class Iri:
    """IRI absoluto (não vazio, sem espaços nem caracteres proibidos em `<...>`)."""

    value: str

    def __post_init__(self) -> None:
        if not self.value or _IRI_FORBIDDEN.search(self.value):
            raise MalformedTerm(f"IRI inválido: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    """Nó anônimo identificado por um id local."""

    id: str

    def __post_init__(self) -> None:
        if not self.id or _WHITESPACE.search(self.id):
            raise MalformedTerm(f"id de blank node inválido: {self.id!r}")

    def n3(self) -> str:
        return f"_:{self.id}"

    def __str__(self) -> str:
        return self.n3()


@dataclass(frozen=True, slots=True)
class Literal:
    """
    Literal tipado.

    Sem datatype explícito o literal é xsd:string; com language tag o
    datatype passa a ser rdf:langString.

    Example:
        >>> Literal("150", "http://intentforge.org/unit#millisecond")
        >>> Literal("olá", language="pt")
    """

    lexical: str
    datatype: str = XSD_STRING
    language: Optional[str] = None

    def __post_init__(self) -> None:
        if self.language is not None:
            if not _LANGUAGE.match(self.language):
                raise MalformedTerm(f"language tag inválida: {self.language!r}")
            object.__setattr__(self, "language", self.language.lower())
            object.__setattr__(self, "datatype", RDF_LANGSTRING)
        elif not self.datatype or _WHITESPACE.search(self.datatype):
            raise MalformedTerm(f"datatype inválido: {self.datatype!r}")

    def n3(self) -> str:
        quoted = f'"{escape_string(self.lexical)}"'
        if self.language is not None:
            return f"{quoted}@{self.language}"
        return f"{quoted}^^<{self.datatype}>"

    def __str__(self) -> str:
        return self.lexical


Term = Union[Iri, BlankNode, Literal]


class Triple(NamedTuple):
    """Aresta do grafo. A validação (predicado IRI, sujeito não literal) fica no Graph."""

    subject: Term
    predicate: Term
    object: Term


# ==================== Ordenação canônica ====================


def term_key(term: Term) -> tuple[int, str, str, str]:
    """Chave de ordenação total: IRIs, depois blank nodes, depois literais."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.id, "", "")
    return (2, term.lexical, term.datatype, term.language or "")


def triple_key(triple: Triple) -> tuple:
    return (term_key(triple.subject), term_key(triple.predicate), term_key(triple.object))


def fresh_blank() -> BlankNode:
    """Cria um blank node com id novo no processo."""
    return BlankNode(f"n{next(_fresh_ids)}")
