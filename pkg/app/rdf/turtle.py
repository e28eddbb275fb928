"""
Turtle parser and serializer.

Subconjunto suportado: @prefix/PREFIX, IRIs absolutos e prefixados,
blank nodes rotulados e listas de propriedades `[ p o ; p2 o2 ]`, listas de
objetos (`,`) e de predicados (`;`), literais tipados, com idioma, numéricos
e booleanos, a palavra-chave `a` e comentários.

Não suportado: coleções `( )`, @base e IRIs relativos.

A serialização é determinística: prefixos por rótulo, sujeitos IRI por
valor, rdf:type primeiro e demais predicados por IRI, objetos pelo texto
renderizado. Blank nodes referenciados uma única vez são escritos inline;
os demais recebem rótulos `_:bN` pela estrutura das suas triplas, sem
depender dos ids internos.
"""

import logging
import re

from app.core.exceptions import MalformedTerm, TurtleSyntaxError, UnknownPrefix
from app.rdf.graph import Graph
from app.rdf.lexer import LexError, Token, string_body, tokenize
from app.rdf.terms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    escape_string,
    fresh_blank,
    term_key,
)

logger = logging.getLogger(__name__)

_ABSOLUTE_IRI = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
_LOCAL_NAME = re.compile(r"^[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?$")
_INDENT = "    "


# ==================== Parser ====================


class _TurtleParser:
    def __init__(self, text: str) -> None:
        try:
            self.tokens = tokenize(text)
        except LexError as e:
            raise TurtleSyntaxError(e.line, e.column, e.message) from e
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.labels: dict[str, BlankNode] = {}
        self.triples: list[Triple] = []

    # Navegação

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def error(self, token: Token, message: str) -> TurtleSyntaxError:
        return TurtleSyntaxError(token.line, token.column, message)

    def expect(self, text: str) -> Token:
        token = self.advance()
        if token.text != text or token.kind not in ("PUNCT", "DTMARK"):
            shown = token.text or "fim do documento"
            raise self.error(token, f"esperado '{text}', encontrado '{shown}'")
        return token

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "PUNCT" and token.text == text

    # Gramática

    def parse(self) -> Graph:
        while self.peek().kind != "EOF":
            token = self.peek()
            if token.kind == "AT" and token.text == "@prefix":
                self.advance()
                self.prefix_directive()
                self.expect(".")
            elif token.kind == "NAME" and token.text.upper() == "PREFIX":
                self.advance()
                self.prefix_directive()
            elif (token.kind == "AT" and token.text == "@base") or (
                token.kind == "NAME" and token.text.upper() == "BASE"
            ):
                raise self.error(token, "@base não suportado")
            else:
                self.statement()
                self.expect(".")
        return Graph(self.triples, self.prefixes)

    def prefix_directive(self) -> None:
        name = self.advance()
        if name.kind != "PNAME" or not name.text.endswith(":"):
            raise self.error(name, "esperado rótulo de prefixo (ex.: 'ex:')")
        iri = self.advance()
        if iri.kind != "IRIREF":
            raise self.error(iri, "esperado IRI do namespace")
        self.prefixes[name.text[:-1]] = self.iri_value(iri)

    def statement(self) -> None:
        if self.at("["):
            subject = self.blank_property_list()
            if self.at("."):
                return
        else:
            subject = self.subject()
        self.predicate_object_list(subject)

    def subject(self) -> Term:
        token = self.peek()
        if token.kind in ("IRIREF", "PNAME"):
            return self.iri()
        if token.kind == "BLANK":
            return self.blank_label(self.advance())
        if token.kind == "PUNCT" and token.text == "(":
            raise self.error(token, "coleções não suportadas")
        raise self.error(token, f"sujeito inválido '{token.text}'")

    def predicate_object_list(self, subject: Term) -> None:
        while True:
            predicate = self.verb()
            self.triples.append(Triple(subject, predicate, self.object()))
            while self.at(","):
                self.advance()
                self.triples.append(Triple(subject, predicate, self.object()))
            if not self.at(";"):
                return
            while self.at(";"):
                self.advance()
            if self.at(".") or self.at("]"):
                return

    def verb(self) -> Iri:
        token = self.peek()
        if token.kind == "NAME" and token.text == "a":
            self.advance()
            return Iri(RDF_TYPE)
        if token.kind in ("IRIREF", "PNAME"):
            return self.iri()
        raise self.error(token, f"predicado inválido '{token.text}'")

    def object(self) -> Term:
        token = self.peek()
        if token.kind in ("IRIREF", "PNAME"):
            return self.iri()
        if token.kind == "BLANK":
            return self.blank_label(self.advance())
        if token.kind in ("STRING", "STRING_LONG"):
            return self.literal()
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
        if self.at("["):
            return self.blank_property_list()
        if self.at("("):
            raise self.error(token, "coleções não suportadas")
        raise self.error(token, f"objeto inválido '{token.text or 'fim do documento'}'")

    def literal(self) -> Literal:
        token = self.advance()
        try:
            lexical = string_body(token)
        except ValueError as e:
            raise self.error(token, str(e)) from e
        following = self.peek()
        if following.kind == "AT":
            self.advance()
            return Literal(lexical, language=following.text[1:])
        if following.kind == "DTMARK":
            self.advance()
            if self.peek().kind not in ("IRIREF", "PNAME"):
                raise self.error(self.peek(), "esperado IRI do datatype")
            return Literal(lexical, self.iri().value)
        return Literal(lexical)

    def blank_property_list(self) -> BlankNode:
        self.expect("[")
        node = fresh_blank()
        if not self.at("]"):
            self.predicate_object_list(node)
        self.expect("]")
        return node

    def blank_label(self, token: Token) -> BlankNode:
        label = token.text[2:]
        if label not in self.labels:
            self.labels[label] = fresh_blank()
        return self.labels[label]

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


def parse_turtle(text: str) -> Graph:
    """
    Converte um documento Turtle em Graph.

    Blank nodes (rotulados ou listas `[ ]`) recebem ids novos a cada chamada.

    Args:
        text: Documento Turtle

    Returns:
        Graph: Triplas e prefixos declarados

    Raises:
        TurtleSyntaxError: Documento malformado (linha, coluna, mensagem)
        UnknownPrefix: Nome prefixado com prefixo não declarado

    Example:
        >>> g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .")
        >>> len(g)
        1
    """
    graph = _TurtleParser(text).parse()
    logger.debug(f"Turtle analisado: {len(graph)} triplas")
    return graph


# ==================== Serializer ====================


class _TurtleWriter:
    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self.namespaces = sorted(graph.prefixes.items(), key=lambda item: -len(item[1]))
        self.inline = self._inline_nodes()
        self.labels: dict[BlankNode, str] = {}

    def _shape(self, node: BlankNode) -> tuple:
        """
        Chave estrutural de um blank node: triplas de entrada e saída com os
        ids de blank nodes mascarados, e o id em ordem natural como desempate.
        """

        def masked(term: Term) -> str:
            return "[]" if isinstance(term, BlankNode) else term.n3()

        outgoing = sorted(f"{t.predicate.n3()} {masked(t.object)}" for t in self.graph.match(node, None, None))
        incoming = sorted(f"{masked(t.subject)} {t.predicate.n3()}" for t in self.graph.match(None, None, node))
        natural = tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", node.id))
        return (outgoing, incoming, natural)

    def _inline_nodes(self) -> set[BlankNode]:
        references: dict[BlankNode, int] = {}
        for triple in self.graph.triples:
            if isinstance(triple.object, BlankNode):
                references[triple.object] = references.get(triple.object, 0) + 1
        inline = {node for node, count in references.items() if count == 1}

        # Ciclos de blank nodes sem raiz precisam de rótulo
        while True:
            reached: set[BlankNode] = set()
            frontier = [s for s in self._subjects() if s not in inline]
            while frontier:
                node = frontier.pop()
                for triple in self.graph.match(node, None, None):
                    child = triple.object
                    if child in inline and child not in reached:
                        reached.add(child)
                        frontier.append(child)
            orphans = sorted(
                (node for node in inline if node not in reached and self.graph.match(node, None, None)),
                key=self._shape,
            )
            if not orphans:
                return inline
            inline.discard(orphans[0])

    def _subjects(self) -> list[Term]:
        return sorted({t.subject for t in self.graph.triples}, key=term_key)

    def qname(self, iri: str) -> str:
        for label, namespace in self.namespaces:
            if iri.startswith(namespace) and _LOCAL_NAME.match(iri[len(namespace):]):
                return f"{label}:{iri[len(namespace):]}"
        return f"<{iri}>"

    def term(self, term: Term, depth: int) -> str:
        if isinstance(term, Iri):
            return self.qname(term.value)
        if isinstance(term, Literal):
            quoted = f'"{escape_string(term.lexical)}"'
            if term.language is not None:
                return f"{quoted}@{term.language}"
            return f"{quoted}^^{self.qname(term.datatype)}"
        if term in self.inline:
            body = self.body(term, depth + 1)
            return f"[ {body} ]" if body else "[]"
        if term not in self.labels:
            self.labels[term] = f"b{len(self.labels)}"
        return f"_:{self.labels[term]}"

    def body(self, subject: Term, depth: int) -> str:
        triples = self.graph.match(subject, None, None)
        predicates = sorted(
            {t.predicate for t in triples},
            key=lambda p: (p.value != RDF_TYPE, p.value),
        )
        separator = " ;\n" + _INDENT * (depth + 1)
        parts = []
        for predicate in predicates:
            verb = "a" if predicate.value == RDF_TYPE else self.term(predicate, depth)
            objects = sorted(self.term(t.object, depth) for t in triples if t.predicate == predicate)
            parts.append(f"{verb} " + ", ".join(objects))
        return separator.join(parts)

    def write(self) -> str:
        if not len(self.graph):
            return ""
        lines = [f"@prefix {label}: <{ns}> ." for label, ns in sorted(self.graph.prefixes.items())]
        if lines:
            lines.append("")
        roots = [s for s in self._subjects() if s not in self.inline]
        named = [s for s in roots if isinstance(s, Iri)]
        blanks = sorted((s for s in roots if isinstance(s, BlankNode)), key=self._shape)
        # Rótulos independentes dos ids: sujeitos primeiro, depois blank nodes só objeto
        referenced = {t.object for t in self.graph.triples if isinstance(t.object, BlankNode)}
        for node in blanks + sorted(referenced - self.inline - set(blanks), key=self._shape):
            self.labels.setdefault(node, f"b{len(self.labels)}")
        for subject in named + blanks:
            lines.append(f"{self.term(subject, 0)} {self.body(subject, 0)} .")
            lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"


def serialize_turtle(graph: Graph) -> str:
    """
    Serializa um Graph em Turtle determinístico.

    Grafo vazio produz string vazia. Literais sempre levam datatype explícito
    (exceto os com language tag).

    Example:
        >>> serialize_turtle(parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b ."))
        '@prefix ex: <http://e/> .\\n\\nex:a ex:p ex:b .\\n'
    """
    return _TurtleWriter(graph).write()
