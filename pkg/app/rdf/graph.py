"""
In-memory RDF graph with set semantics.

O Graph é imutável do ponto de vista do chamador: insert, merge e
rename_namespace devolvem novos grafos. Os índices por posição são
construídos sob demanda na primeira consulta.
"""

from __future__ import annotations

import re
from collections import defaultdict
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from app.core.exceptions import MalformedTerm, MalformedTriple
from app.rdf.terms import BlankNode, Iri, Literal, Term, Triple, fresh_blank, triple_key

_PREFIX_LABEL = re.compile(r"^(?:[A-Za-z][A-Za-z0-9_-]*)?$")


def check_triple(triple: Triple) -> Triple:
    """
    Valida uma tripla.

    Raises:
        MalformedTriple: Predicado que não é IRI ou sujeito literal
    """
    subject, predicate, obj = triple
    if not isinstance(predicate, Iri):
        raise MalformedTriple(f"predicado deve ser IRI: {predicate!r}")
    if isinstance(subject, Literal) or not isinstance(subject, (Iri, BlankNode)):
        raise MalformedTriple(f"sujeito inválido: {subject!r}")
    if not isinstance(obj, (Iri, BlankNode, Literal)):
        raise MalformedTriple(f"objeto inválido: {obj!r}")
    return Triple(subject, predicate, obj)


class Graph:
    """
    Conjunto de triplas com mapa de prefixos.

    Attributes:
        prefixes: Mapa somente-leitura rótulo -> namespace

    Example:
        >>> g = Graph(prefixes={"ex": "http://e/"})
        >>> g = g.insert(Triple(Iri("http://e/a"), Iri("http://e/p"), Iri("http://e/b")))
        >>> len(g)
        1
    """

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        prefixes: Optional[Mapping[str, str]] = None,
    ) -> None:
        self._triples: frozenset[Triple] = frozenset(check_triple(t) for t in triples)
        checked: dict[str, str] = {}
        for label, namespace in (prefixes or {}).items():
            if not _PREFIX_LABEL.match(label):
                raise MalformedTerm(f"rótulo de prefixo inválido: {label!r}")
            Iri(namespace)
            checked[label] = namespace
        self.prefixes: Mapping[str, str] = MappingProxyType(checked)

    # ==================== Protocolo de conjunto ====================

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._sorted)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples and dict(self.prefixes) == dict(other.prefixes)

    def __hash__(self) -> int:
        return hash((self._triples, frozenset(self.prefixes.items())))

    def __repr__(self) -> str:
        return f"Graph({len(self)} triplas, {len(self.prefixes)} prefixos)"

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    @cached_property
    def _sorted(self) -> tuple[Triple, ...]:
        return tuple(sorted(self._triples, key=triple_key))

    @cached_property
    def _index(self) -> dict[int, dict[Term, list[Triple]]]:
        index: dict[int, dict[Term, list[Triple]]] = {0: defaultdict(list), 1: defaultdict(list), 2: defaultdict(list)}
        for triple in self._sorted:
            for position in (0, 1, 2):
                index[position][triple[position]].append(triple)
        return index

    # ==================== Operações ====================

    def insert(self, triple: Triple) -> Graph:
        """Devolve um grafo contendo a tripla (o próprio grafo se já existir)."""
        triple = check_triple(triple)
        if triple in self._triples:
            return self
        return Graph(self._triples | {triple}, self.prefixes)

    def insert_all(self, triples: Iterable[Triple]) -> Graph:
        return Graph(self._triples.union(check_triple(t) for t in triples), self.prefixes)

    def with_prefixes(self, prefixes: Mapping[str, str]) -> Graph:
        """Devolve uma cópia com prefixos adicionais (sobrescreve rótulos repetidos)."""
        return Graph(self._triples, {**self.prefixes, **prefixes})

    def match(
        self,
        subject: Optional[Term] = None,
        predicate: Optional[Term] = None,
        obj: Optional[Term] = None,
    ) -> list[Triple]:
        """
        Triplas que concordam com todas as posições informadas.

        Posições None são curingas; o resultado segue a ordem canônica.
        """
        bound = [(pos, term) for pos, term in enumerate((subject, predicate, obj)) if term is not None]
        if not bound:
            return list(self._sorted)
        # Menor lista candidata do índice
        position, term = min(bound, key=lambda item: len(self._index[item[0]].get(item[1], ())))
        candidates = self._index[position].get(term, [])
        return [t for t in candidates if all(t[pos] == value for pos, value in bound)]

    def objects(self, subject: Term, predicate: Term) -> list[Term]:
        return [t.object for t in self.match(subject, predicate, None)]

    def subjects(self, predicate: Term, obj: Term) -> list[Term]:
        return [t.subject for t in self.match(None, predicate, obj)]

    def value(self, subject: Term, predicate: Term) -> Optional[Term]:
        """Primeiro objeto (ordem canônica) ou None."""
        found = self.objects(subject, predicate)
        return found[0] if found else None

    def blank_nodes(self) -> set[BlankNode]:
        return {
            term
            for triple in self._triples
            for term in (triple.subject, triple.object)
            if isinstance(term, BlankNode)
        }

    def merge(self, other: Graph) -> Graph:
        """
        União de dois grafos.

        Blank nodes de `other` que colidem com os deste grafo são renomeados.
        Em conflito de prefixos, prevalece o rótulo deste grafo.
        """
        collisions = self.blank_nodes() & other.blank_nodes()
        renames: dict[Term, Term] = {node: fresh_blank() for node in sorted(collisions, key=lambda b: b.id)}
        moved = (
            Triple(renames.get(s, s), p, renames.get(o, o)) for s, p, o in other._triples
        )
        return Graph(self._triples.union(moved), {**other.prefixes, **self.prefixes})

    def rename_namespace(self, old: str, new: str) -> Graph:
        """Reescreve todo IRI iniciado por `old` para começar com `new` (inclusive prefixos)."""

        def move(term: Term) -> Term:
            if isinstance(term, Iri) and term.value.startswith(old):
                return Iri(new + term.value[len(old):])
            return term

        triples = (Triple(move(s), move(p), move(o)) for s, p, o in self._triples)
        prefixes = {
            label: (new + ns[len(old):] if ns.startswith(old) else ns)
            for label, ns in self.prefixes.items()
        }
        return Graph(triples, prefixes)


# ==================== Funções de módulo ====================


def insert(graph: Graph, triple: Triple) -> Graph:
    return graph.insert(triple)


def match(
    graph: Graph,
    pattern: tuple[Optional[Term], Optional[Term], Optional[Term]] = (None, None, None),
) -> list[Triple]:
    return graph.match(*pattern)


def subgraph(graph: Graph, root: Term) -> Graph:
    """
    Triplas alcançáveis a partir de `root` passando apenas por blank nodes.

    Usado para isolar um nó de relatório e suas listas de propriedades.
    """
    seen: set[Term] = {root}
    frontier = [root]
    collected: list[Triple] = []
    while frontier:
        node = frontier.pop()
        for triple in graph.match(node, None, None):
            collected.append(triple)
            if isinstance(triple.object, BlankNode) and triple.object not in seen:
                seen.add(triple.object)
                frontier.append(triple.object)
    return Graph(collected, graph.prefixes)
