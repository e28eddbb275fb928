"""
SPARQL subset: SELECT / WHERE / FILTER with equality conjunctions.
"""

from app.sparql.evaluator import SolutionSequence, evaluate, load_query, substitute
from app.sparql.query import (
    EqualityAtom,
    FilterExpr,
    Placeholder,
    Query,
    TriplePattern,
    Variable,
    parse_query,
)

__all__ = [
    "EqualityAtom",
    "FilterExpr",
    "Placeholder",
    "Query",
    "SolutionSequence",
    "TriplePattern",
    "Variable",
    "evaluate",
    "load_query",
    "parse_query",
    "substitute",
]
