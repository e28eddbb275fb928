"""
SPARQL subset: query model and parser.

Gramática suportada:
    PREFIX rótulo: <iri>
    SELECT [DISTINCT] ?v1 ?v2 ... | *
    WHERE { padrões de tripla . FILTER (atomo && atomo ...) }

Cada átomo é uma igualdade `?var = termo` ou `?var = ?var`. Listas de
propriedades inline `[ p o ]` nos padrões viram variáveis existenciais novas
(não projetadas). Nomes soltos nos operandos do FILTER (ex.: `param`) são
placeholders de template e precisam ser substituídos antes da avaliação.

Qualquer construção fora do subconjunto gera UnsupportedFeature.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from app.core.exceptions import (
    MalformedTerm,
    QuerySyntaxError,
    UnknownPrefix,
    UnsupportedFeature,
)
from app.rdf.lexer import LexError, Token, string_body, tokenize
from app.rdf.terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    Iri,
    Literal,
    Term,
)

# Palavras-chave fora do subconjunto
UNSUPPORTED_KEYWORDS = {
    "OPTIONAL",
    "UNION",
    "MINUS",
    "GRAPH",
    "SERVICE",
    "BIND",
    "VALUES",
    "ORDER",
    "GROUP",
    "HAVING",
    "LIMIT",
    "OFFSET",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
    "INSERT",
    "DELETE",
    "LOAD",
    "CLEAR",
    "BASE",
    "FROM",
    "REDUCED",
    "NOT",
    "EXISTS",
}

_ABSOLUTE_IRI = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")


# ==================== Modelo ====================


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def n3(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True, slots=True)
class Placeholder:
    """Placeholder de template sem valor (ex.: `param` no FILTER)."""

    name: str


PatternTerm = Union[Term, Variable]
Operand = Union[Term, Variable, Placeholder]


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def variables(self) -> list[Variable]:
        return [t for t in (self.subject, self.predicate, self.object) if isinstance(t, Variable)]


@dataclass(frozen=True, slots=True)
class EqualityAtom:
    """`left = right`; o lado esquerdo é sempre uma variável."""

    left: Variable
    right: Operand

    def variables(self) -> set[Variable]:
        found = {self.left}
        if isinstance(self.right, Variable):
            found.add(self.right)
        return found


@dataclass(frozen=True, slots=True)
class FilterExpr:
    """Conjunção de átomos de igualdade."""

    atoms: tuple[EqualityAtom, ...]


@dataclass(frozen=True)
class Query:
    """
    Consulta analisada.

    Attributes:
        prefixes: Prefixos declarados
        projection: Variáveis projetadas (nomes, sem '?')
        patterns: Padrões em ordem de escrita (após expansão das listas inline)
        filters: Filtros (conjunções)
        distinct: DISTINCT informado (soluções são sempre distintas)
        placeholders: Nomes soltos do FILTER, na ordem do texto
        placeholder_spans: (nome, início, fim) de cada ocorrência no texto
    """

    prefixes: dict[str, str]
    projection: tuple[str, ...]
    patterns: tuple[TriplePattern, ...]
    filters: tuple[FilterExpr, ...] = ()
    distinct: bool = False
    placeholders: tuple[str, ...] = field(default=())
    placeholder_spans: tuple[tuple[str, int, int], ...] = field(default=())


# ==================== Parser ====================


class _QueryParser:
    def __init__(self, text: str) -> None:
        try:
            self.tokens = tokenize(text)
        except LexError as e:
            raise QuerySyntaxError(e.position, e.message) from e
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.patterns: list[TriplePattern] = []
        self.filters: list[FilterExpr] = []
        self.placeholders: list[str] = []
        self.placeholder_spans: list[tuple[str, int, int]] = []
        # Variáveis dos padrões na ordem do texto (projeção de SELECT *)
        self.pattern_variables: list[str] = []
        self.fresh_count = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def error(self, token: Token, message: str) -> QuerySyntaxError:
        return QuerySyntaxError(token.position, message)

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "PUNCT" and token.text == text

    def expect(self, text: str) -> Token:
        token = self.advance()
        if token.kind != "PUNCT" or token.text != text:
            raise self.error(token, f"esperado '{text}', encontrado '{token.text or 'fim da consulta'}'")
        return token

    def keyword(self, token: Token) -> Optional[str]:
        return token.text.upper() if token.kind == "NAME" else None

    def check_supported(self, token: Token) -> None:
        word = self.keyword(token)
        if word in UNSUPPORTED_KEYWORDS:
            raise UnsupportedFeature(word)

    # Gramática

    def parse(self) -> Query:
        while self.keyword(self.peek()) == "PREFIX":
            self.advance()
            self.prefix_declaration()
        self.check_supported(self.peek())
        if self.keyword(self.peek()) != "SELECT":
            raise self.error(self.peek(), "esperado SELECT")
        self.advance()

        distinct = False
        if self.keyword(self.peek()) == "DISTINCT":
            self.advance()
            distinct = True
        self.check_supported(self.peek())

        select_all = False
        projected: list[str] = []
        if self.at("*"):
            self.advance()
            select_all = True
        else:
            while self.peek().kind == "VAR":
                projected.append(self.advance().text[1:])
            if not projected:
                if self.at("("):
                    raise UnsupportedFeature("expressões no SELECT")
                raise self.error(self.peek(), "esperada lista de variáveis ou '*'")

        self.check_supported(self.peek())
        if self.keyword(self.peek()) == "WHERE":
            self.advance()
        self.expect("{")
        self.group()
        self.expect("}")

        trailing = self.peek()
        if trailing.kind != "EOF":
            self.check_supported(trailing)
            raise self.error(trailing, f"conteúdo inesperado após a consulta: '{trailing.text}'")

        in_patterns = self.pattern_variables
        if select_all:
            projected = list(in_patterns)
        for name in projected:
            if name not in in_patterns:
                raise QuerySyntaxError(0, f"variável projetada ?{name} não aparece nos padrões")

        return Query(
            prefixes=dict(self.prefixes),
            projection=tuple(projected),
            patterns=tuple(self.patterns),
            filters=tuple(self.filters),
            distinct=distinct,
            placeholders=tuple(self.placeholders),
            placeholder_spans=tuple(self.placeholder_spans),
        )

    def prefix_declaration(self) -> None:
        name = self.advance()
        if name.kind != "PNAME" or not name.text.endswith(":"):
            raise self.error(name, "esperado rótulo de prefixo")
        iri = self.advance()
        if iri.kind != "IRIREF":
            raise self.error(iri, "esperado IRI do namespace")
        self.prefixes[name.text[:-1]] = self.iri_value(iri)

    def group(self) -> None:
        while not self.at("}"):
            token = self.peek()
            if token.kind == "EOF":
                raise self.error(token, "esperado '}'")
            if self.at("."):
                self.advance()
                continue
            if self.at("{"):
                raise UnsupportedFeature("grupos aninhados")
            self.check_supported(token)
            if self.keyword(token) == "FILTER":
                self.advance()
                self.filter()
                continue
            self.triples_block()

    def triples_block(self) -> None:
        if self.at("["):
            subject: PatternTerm = self.blank_pattern()
            if self.at(".") or self.at("}"):
                return
        else:
            subject = self.pattern_term(position="subject")
        self.property_list(subject)

    def property_list(self, subject: PatternTerm) -> None:
        while True:
            predicate = self.pattern_term(position="predicate")
            self.add(subject, predicate, self.object())
            while self.at(","):
                self.advance()
                self.add(subject, predicate, self.object())
            if not self.at(";"):
                return
            while self.at(";"):
                self.advance()
            if self.at(".") or self.at("]") or self.at("}"):
                return

    def add(self, subject: PatternTerm, predicate: PatternTerm, obj: PatternTerm) -> None:
        self.patterns.append(TriplePattern(subject, predicate, obj))

    def object(self) -> PatternTerm:
        if self.at("["):
            return self.blank_pattern()
        return self.pattern_term(position="object")

    def blank_pattern(self) -> Variable:
        self.expect("[")
        self.fresh_count += 1
        node = Variable(f".b{self.fresh_count}")
        if not self.at("]"):
            self.property_list(node)
        self.expect("]")
        return node

    def pattern_term(self, position: str) -> PatternTerm:
        token = self.peek()
        if token.kind == "VAR":
            self.advance()
            if token.text[1:] not in self.pattern_variables:
                self.pattern_variables.append(token.text[1:])
            return Variable(token.text[1:])
        if token.kind == "BLANK":
            self.advance()
            return Variable(".label_" + token.text[2:])
        if position == "predicate":
            if token.kind == "NAME" and token.text == "a":
                self.advance()
                return Iri(RDF_TYPE)
            if token.kind in ("STRING", "STRING_LONG", "NUMBER"):
                raise self.error(token, "predicado não pode ser literal")
            if token.kind == "PUNCT" and token.text in ("^", "/", "|", "!", "("):
                raise UnsupportedFeature("property paths")
        if position == "subject" and token.kind in ("STRING", "STRING_LONG", "NUMBER"):
            raise self.error(token, "sujeito não pode ser literal")
        if token.kind == "PUNCT" and token.text == "(":
            raise UnsupportedFeature("coleções")
        term = self.term()
        if position == "predicate" and self.peek().kind == "PUNCT" and self.peek().text in ("*", "/", "|"):
            raise UnsupportedFeature("property paths")
        return term

    def term(self) -> Term:
        token = self.peek()
        if token.kind in ("IRIREF", "PNAME"):
            return self.iri()
        if token.kind in ("STRING", "STRING_LONG"):
            self.advance()
            try:
                lexical = string_body(token)
            except ValueError as e:
                raise self.error(token, str(e)) from e
            if self.peek().kind == "AT":
                return Literal(lexical, language=self.advance().text[1:])
            if self.peek().kind == "DTMARK":
                self.advance()
                return Literal(lexical, self.iri().value)
            return Literal(lexical)
        if token.kind == "NUMBER":
            self.advance()
            if re.fullmatch(r"[+-]?\d+", token.text):
                return Literal(token.text, XSD_INTEGER)
            if "e" in token.text.lower():
                return Literal(token.text, XSD_DOUBLE)
            return Literal(token.text, XSD_DECIMAL)
        if token.kind == "NAME" and token.text in ("true", "false"):
            self.advance()
            return Literal(token.text, XSD_BOOLEAN)
        raise self.error(token, f"termo inválido '{token.text or 'fim da consulta'}'")

    def iri(self) -> Iri:
        token = self.advance()
        if token.kind == "IRIREF":
            return Iri(self.iri_value(token))
        label, _, local = token.text.partition(":")
        if label not in self.prefixes:
            raise UnknownPrefix(label)
        try:
            return Iri(self.prefixes[label] + local)
        except MalformedTerm as e:
            raise self.error(token, str(e)) from e

    def iri_value(self, token: Token) -> str:
        value = token.text[1:-1]
        if not _ABSOLUTE_IRI.match(value):
            raise self.error(token, f"IRI relativo não suportado: <{value}>")
        return value

    # FILTER

    def filter(self) -> None:
        self.expect("(")
        atoms = self.conjunction()
        self.expect(")")
        self.filters.append(FilterExpr(tuple(atoms)))

    def conjunction(self) -> list[EqualityAtom]:
        atoms = self.atom()
        while True:
            token = self.peek()
            if token.kind == "PUNCT" and token.text == "&&":
                self.advance()
                atoms.extend(self.atom())
                continue
            if token.kind == "PUNCT" and token.text == "||":
                raise UnsupportedFeature("||")
            return atoms

    def atom(self) -> list[EqualityAtom]:
        if self.at("("):
            self.advance()
            atoms = self.conjunction()
            self.expect(")")
            return atoms
        if self.at("!"):
            raise UnsupportedFeature("!")
        left = self.operand()
        operator = self.advance()
        if operator.kind != "PUNCT":
            raise self.error(operator, f"esperado '=', encontrado '{operator.text}'")
        if operator.text in ("!=", "<", ">", "<=", ">="):
            raise UnsupportedFeature(operator.text)
        if operator.text != "=":
            raise self.error(operator, f"esperado '=', encontrado '{operator.text}'")
        right = self.operand()

        if not isinstance(left, Variable):
            left, right = right, left
        if not isinstance(left, Variable):
            raise self.error(operator, "comparação sem variável")
        return [EqualityAtom(left, right)]

    def operand(self) -> Operand:
        token = self.peek()
        if token.kind == "VAR":
            self.advance()
            return Variable(token.text[1:])
        if token.kind == "NAME" and token.text not in ("true", "false"):
            following = self.peek(1)
            if following.kind == "PUNCT" and following.text == "(":
                raise UnsupportedFeature(token.text.upper())
            self.check_supported(token)
            self.advance()
            if token.text not in self.placeholders:
                self.placeholders.append(token.text)
            self.placeholder_spans.append((token.text, token.position, token.position + len(token.text)))
            return Placeholder(token.text)
        return self.term()


def parse_query(text: str) -> Query:
    """
    Analisa uma consulta do subconjunto SPARQL.

    Args:
        text: Texto da consulta

    Returns:
        Query: AST com listas inline já expandidas

    Raises:
        QuerySyntaxError: Consulta malformada (posição, mensagem)
        UnsupportedFeature: Construção fora do subconjunto

    Example:
        >>> q = parse_query("SELECT ?x WHERE { ?x ?p ?o }")
        >>> len(q.patterns)
        1
    """
    return _QueryParser(text).parse()
