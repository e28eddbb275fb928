"""
RDF core: terms, graphs and Turtle I/O.
"""

from app.rdf.graph import Graph, insert, match, subgraph
from app.rdf.terms import BlankNode, Iri, Literal, Term, Triple, fresh_blank
from app.rdf.turtle import parse_turtle, serialize_turtle

__all__ = [
    "BlankNode",
    "Graph",
    "Iri",
    "Literal",
    "Term",
    "Triple",
    "fresh_blank",
    "insert",
    "match",
    "parse_turtle",
    "serialize_turtle",
    "subgraph",
]
