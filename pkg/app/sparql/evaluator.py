"""
SPARQL subset evaluator and query templates.

A avaliação é um nested-loop join da esquerda para a direita, na ordem dos
padrões; cada átomo de FILTER é aplicado assim que todas as suas variáveis
estão ligadas. O resultado é projetado, sem duplicatas e ordenado pelos
termos ligados.
"""

import logging
import re
from pathlib import Path
from typing import Mapping, Optional

from app.core.exceptions import MissingPlaceholder, QuerySyntaxError, UnknownPrefix, UnsupportedFeature
from app.rdf.graph import Graph
from app.rdf.terms import Term, term_key
from app.sparql.query import EqualityAtom, Placeholder, Query, TriplePattern, Variable, parse_query

logger = logging.getLogger(__name__)

Binding = dict[str, Term]
SolutionSequence = list[Binding]

PLACEHOLDER = re.compile(r"\{\{\s*(\w+)\s*\}\}")
QUERIES_DIR = Path(__file__).resolve().parent.parent / "knowledge" / "resources"


def _resolve(term, binding: Mapping[str, Term]) -> Optional[Term]:
    if isinstance(term, Variable):
        return binding.get(term.name)
    return term


def _unify(pattern: TriplePattern, triple, binding: Binding) -> Optional[Binding]:
    extended = dict(binding)
    for slot, value in zip((pattern.subject, pattern.predicate, pattern.object), triple):
        if isinstance(slot, Variable):
            bound = extended.get(slot.name)
            if bound is None:
                extended[slot.name] = value
            elif bound != value:
                return None
    return extended


def _holds(atom: EqualityAtom, binding: Binding) -> bool:
    right = atom.right
    value = binding.get(right.name) if isinstance(right, Variable) else right
    return binding.get(atom.left.name) == value


def evaluate(query: Query, graph: Graph) -> SolutionSequence:
    """
    Avalia a consulta sobre o grafo.

    Args:
        query: Consulta analisada
        graph: Grafo consultado

    Returns:
        SolutionSequence: Ligações projetadas, distintas e ordenadas

    Raises:
        MissingPlaceholder: Consulta com placeholder de template sem valor

    Example:
        >>> evaluate(parse_query("SELECT ?s WHERE { ?s ?p ?o }"), Graph())
        []
    """
    atoms = [atom for expr in query.filters for atom in expr.atoms]
    for atom in atoms:
        if isinstance(atom.right, Placeholder):
            raise MissingPlaceholder(atom.right.name)

    # Átomos liberados após cada padrão
    bound: set[str] = set()
    pending = list(atoms)
    ready: list[list[EqualityAtom]] = []
    for pattern in query.patterns:
        bound.update(v.name for v in pattern.variables())
        now = [a for a in pending if {v.name for v in a.variables()} <= bound]
        pending = [a for a in pending if a not in now]
        ready.append(now)
    if pending:
        # Variável de filtro que nenhum padrão liga: nada satisfaz
        return []

    solutions: list[Binding] = [{}]
    for pattern, checks in zip(query.patterns, ready):
        joined: list[Binding] = []
        for binding in solutions:
            subject = _resolve(pattern.subject, binding)
            predicate = _resolve(pattern.predicate, binding)
            obj = _resolve(pattern.object, binding)
            for triple in graph.match(subject, predicate, obj):
                extended = _unify(pattern, triple, binding)
                if extended is not None and all(_holds(a, extended) for a in checks):
                    joined.append(extended)
        solutions = joined
        if not solutions:
            break

    projected: dict[tuple, Binding] = {}
    for binding in solutions:
        row = {name: binding[name] for name in query.projection}
        key = tuple(term_key(row[name]) for name in query.projection)
        projected.setdefault(key, row)
    ordered = [projected[key] for key in sorted(projected)]
    logger.debug(f"Consulta avaliada: {len(query.patterns)} padrões, {len(ordered)} soluções")
    return ordered


def substitute(template: str, bindings: Mapping[str, Term]) -> str:
    """
    Substitui os placeholders de um template pela forma Turtle/SPARQL de cada termo.

    Dois formatos são aceitos: `{{nome}}` em qualquer ponto do texto e nomes
    soltos nos operandos do FILTER (ex.: `?parameter = param`). Os nomes
    soltos só são reconhecidos quando o texto é uma consulta válida.

    Raises:
        MissingPlaceholder: Primeiro placeholder sem valor

    Example:
        >>> substitute("FILTER (?p = {{param}})", {"param": Iri("http://e/k")})
        'FILTER (?p = <http://e/k>)'
        >>> substitute("SELECT ?p WHERE { ?s ?p ?o FILTER (?p = param) }", {"param": Iri("http://e/k")})
        'SELECT ?p WHERE { ?s ?p ?o FILTER (?p = <http://e/k>) }'
    """
    for found in PLACEHOLDER.finditer(template):
        if found.group(1) not in bindings:
            raise MissingPlaceholder(found.group(1))
    text = PLACEHOLDER.sub(lambda found: bindings[found.group(1)].n3(), template)

    try:
        spans = parse_query(text).placeholder_spans
    except (QuerySyntaxError, UnknownPrefix, UnsupportedFeature):
        return text
    for name, _, _ in spans:
        if name not in bindings:
            raise MissingPlaceholder(name)
    for name, start, end in reversed(spans):
        text = text[:start] + bindings[name].n3() + text[end:]
    return text


def load_query(name: str) -> str:
    """Lê um template `.rq` embarcado (ex.: 'service-kpi.rq')."""
    return (QUERIES_DIR / name).read_text(encoding="utf-8")
