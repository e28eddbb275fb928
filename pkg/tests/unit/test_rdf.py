"""
Unit tests for the RDF core.
Validates terms, graph operations and Turtle parsing/serialization.
"""

import random

import pytest
import rdflib
import rdflib.compare

from app.core.exceptions import MalformedTerm, MalformedTriple, TurtleSyntaxError, UnknownPrefix
from app.rdf.graph import Graph, insert, match, subgraph
from app.rdf.terms import XSD_INTEGER, XSD_STRING, BlankNode, Iri, Literal, Triple, fresh_blank
from app.rdf.turtle import parse_turtle, serialize_turtle
from tests.conftest import isomorphic

EX = "http://example.org/"


def ex(name: str) -> Iri:
    return Iri(EX + name)


def random_graph(rng: random.Random) -> Graph:
    """Random graph over a small vocabulary, with literals, tags and blank nodes."""
    blanks = [BlankNode(f"r{index}") for index in range(rng.randint(0, 4))]
    texts = ["plain", "with space", 'quote "inside"', "back\\slash", "line\nbreak", "tab\there", "acentuação", ""]

    def node():
        if blanks and rng.random() < 0.35:
            return rng.choice(blanks)
        return ex(f"r{rng.randint(0, 5)}")

    def value():
        roll = rng.random()
        if roll < 0.4:
            return node()
        if roll < 0.6:
            return Literal(rng.choice(texts))
        if roll < 0.75:
            return Literal(str(rng.randint(-5, 500)), XSD_INTEGER)
        if roll < 0.9:
            return Literal(rng.choice(texts[:3]), language=rng.choice(["en", "pt-br"]))
        return Literal("150", EX + "unit/ms")

    triples = [Triple(node(), ex(f"p{rng.randint(0, 3)}"), value()) for _ in range(rng.randint(0, 12))]
    return Graph(triples, {"ex": EX})


def to_rdflib(text: str) -> rdflib.Graph:
    return rdflib.Graph().parse(data=text, format="turtle")


class TestTerms:
    """Tests for RDF term construction."""

    def test_iri_rejects_empty_and_whitespace(self):
        """Test that empty IRIs and IRIs with spaces are malformed."""
        with pytest.raises(MalformedTerm):
            Iri("")
        with pytest.raises(MalformedTerm):
            Iri("http://example.org/a b")

    @pytest.mark.parametrize("char", ["<", ">", '"', "{", "}", "|", "^", "`", "\\"])
    def test_iri_rejects_characters_outside_iriref(self, char):
        """Test that characters the IRIREF grammar forbids are malformed."""
        with pytest.raises(MalformedTerm):
            Iri(f"http://example.org/a{char}b")

    def test_every_valid_iri_can_be_written_and_read_back(self):
        """Test that an IRI with unusual but legal characters round-trips."""
        odd = Iri("http://example.org/a?x=1&y=[2]#frag~%20")
        graph = Graph([Triple(odd, ex("p"), ex("o"))])
        assert parse_turtle(serialize_turtle(graph)) == graph

    def test_literal_defaults_to_xsd_string(self):
        """Test that a literal without datatype is an xsd:string."""
        assert Literal("x").datatype == XSD_STRING

    def test_language_tag_is_lowercased(self):
        """Test that language tags are normalized to lowercase."""
        literal = Literal("olá", language="PT-BR")
        assert literal.language == "pt-br"
        assert literal.n3() == '"olá"@pt-br'

    def test_literals_compare_lexically(self):
        """Test that literals with different lexical forms are different terms."""
        assert Literal("01", XSD_INTEGER) != Literal("1", XSD_INTEGER)

    def test_fresh_blank_nodes_are_distinct(self):
        """Test that fresh blank nodes never collide."""
        assert fresh_blank() != fresh_blank()


class TestGraph:
    """Tests for graph operations."""

    def test_insert_is_idempotent(self):
        """Test that inserting an existing triple leaves the graph unchanged."""
        triple = Triple(ex("a"), ex("p"), ex("b"))
        graph = insert(Graph(), triple)
        assert insert(graph, triple) == graph
        assert len(graph) == 1

    def test_insert_returns_new_graph(self):
        """Test that graphs are immutable values."""
        empty = Graph()
        insert(empty, Triple(ex("a"), ex("p"), ex("b")))
        assert len(empty) == 0

    def test_literal_predicate_is_malformed(self):
        """Test that a literal predicate is rejected."""
        with pytest.raises(MalformedTriple):
            Graph([Triple(ex("a"), Literal("p"), ex("b"))])

    def test_literal_subject_is_malformed(self):
        """Test that a literal subject is rejected."""
        with pytest.raises(MalformedTriple):
            Graph([Triple(Literal("s"), ex("p"), ex("b"))])

    def test_match_with_wildcards(self):
        """Test pattern matching with bound and free positions."""
        graph = Graph([
            Triple(ex("a"), ex("p"), ex("b")),
            Triple(ex("a"), ex("q"), ex("c")),
            Triple(ex("d"), ex("p"), ex("b")),
        ])
        assert len(match(graph, (ex("a"), None, None))) == 2
        assert len(match(graph, (None, ex("p"), ex("b")))) == 2
        assert match(graph, (ex("x"), None, None)) == []
        assert len(match(graph)) == 3

    def test_match_equals_linear_scan(self):
        """Test match against a naive filter over all triples, on random graphs."""
        rng = random.Random(50)
        for _ in range(50):
            graph = random_graph(rng)
            terms = [None, *{term for triple in graph for term in triple}]
            for _ in range(5):
                pattern = (rng.choice(terms), rng.choice(terms), rng.choice(terms))
                expected = [
                    triple
                    for triple in graph
                    if all(bound is None or bound == value for bound, value in zip(pattern, triple))
                ]
                assert match(graph, pattern) == expected

    def test_match_order_is_canonical(self):
        """Test that match results are sorted independently of insertion order."""
        triples = [Triple(ex(name), ex("p"), ex("o")) for name in "cab"]
        assert match(Graph(triples)) == match(Graph(reversed(triples)))

    def test_merge_renames_colliding_blank_nodes(self):
        """Test that merging keeps blank nodes of both graphs apart."""
        shared = BlankNode("x")
        left = Graph([Triple(shared, ex("p"), Literal("left"))])
        right = Graph([Triple(shared, ex("p"), Literal("right"))])
        merged = left.merge(right)
        assert len(merged) == 2
        assert len(merged.blank_nodes()) == 2

    def test_rename_namespace(self):
        """Test that IRIs under a namespace move to the new namespace."""
        graph = Graph([Triple(ex("a"), ex("p"), Iri("http://other.org/b"))], {"ex": EX})
        moved = graph.rename_namespace(EX, "http://new.org/")
        assert Triple(Iri("http://new.org/a"), Iri("http://new.org/p"), Iri("http://other.org/b")) in moved
        assert moved.prefixes["ex"] == "http://new.org/"

    def test_subgraph_follows_blank_nodes_only(self):
        """Test that subgraph collects triples reachable through blank nodes."""
        inner = BlankNode("i")
        graph = Graph([
            Triple(ex("root"), ex("p"), inner),
            Triple(inner, ex("q"), Literal("v")),
            Triple(ex("root"), ex("r"), ex("other")),
            Triple(ex("other"), ex("s"), Literal("not reached")),
        ])
        assert len(subgraph(graph, ex("root"))) == 3


class TestTurtleParser:
    """Tests for Turtle parsing."""

    def test_empty_document(self):
        """Test that an empty document yields an empty graph without prefixes."""
        graph = parse_turtle("")
        assert len(graph) == 0
        assert dict(graph.prefixes) == {}

    def test_prefixed_names_and_keyword_a(self):
        """Test prefix expansion and the `a` keyword."""
        graph = parse_turtle("@prefix ex: <http://example.org/> .\nex:a a ex:C ; ex:p ex:b , ex:c .")
        assert len(graph) == 3
        assert graph.prefixes["ex"] == EX

    def test_sparql_style_prefix(self):
        """Test that PREFIX directives without a trailing dot are accepted."""
        graph = parse_turtle("PREFIX ex: <http://example.org/>\nex:a ex:p ex:b .")
        assert len(graph) == 1

    def test_typed_lang_numeric_and_boolean_literals(self):
        """Test the literal forms accepted by the parser."""
        graph = parse_turtle(
            '@prefix ex: <http://example.org/> .\n'
            'ex:a ex:p "150"^^<http://example.org/ms> , "olá"@pt , 42 , 0.5 , true , "x" .'
        )
        objects = {t.object for t in graph}
        assert Literal("150", EX + "ms") in objects
        assert Literal("olá", language="pt") in objects
        assert Literal("42", XSD_INTEGER) in objects
        assert Literal("x") in objects
        assert len(objects) == 6

    def test_nested_blank_property_lists(self):
        """Test that nested [ ] lists produce linked blank nodes."""
        graph = parse_turtle(
            "@prefix ex: <http://example.org/> .\n"
            "ex:s ex:has [ ex:valueBy [ ex:latency \"150\" ] ] ."
        )
        assert len(graph) == 3
        assert len(graph.blank_nodes()) == 2

    def test_blank_labels_are_scoped_per_document(self):
        """Test that the same label in two documents yields different nodes."""
        text = "@prefix ex: <http://example.org/> .\n_:b ex:p ex:o ."
        assert parse_turtle(text).blank_nodes().isdisjoint(parse_turtle(text).blank_nodes())

    def test_string_escapes(self):
        """Test that string escapes are resolved."""
        graph = parse_turtle('<http://e/a> <http://e/p> "a\\"b\\nc\\u00e9" .')
        assert next(iter(graph)).object == Literal('a"b\ncé')

    def test_unknown_prefix(self):
        """Test that an undeclared prefix raises UnknownPrefix."""
        with pytest.raises(UnknownPrefix) as info:
            parse_turtle("nope:a <http://e/p> <http://e/o> .")
        assert info.value.label == "nope"

    def test_syntax_error_reports_position(self):
        """Test that syntax errors carry line and column."""
        with pytest.raises(TurtleSyntaxError) as info:
            parse_turtle("@prefix ex: <http://example.org/> .\nex:a ex:p .")
        assert info.value.line == 2

    def test_collections_and_base_are_unsupported(self):
        """Test that collections and @base are rejected."""
        with pytest.raises(TurtleSyntaxError):
            parse_turtle("<http://e/a> <http://e/p> ( <http://e/b> ) .")
        with pytest.raises(TurtleSyntaxError):
            parse_turtle("@base <http://e/> .")

    def test_relative_iri_is_rejected(self):
        """Test that relative IRIs are rejected."""
        with pytest.raises(TurtleSyntaxError):
            parse_turtle("<a> <http://e/p> <http://e/b> .")

    def test_agrees_with_reference_parser(self, convvideo_listing):
        """Test that the parsed listing matches the reference parser triple for triple."""
        ours = parse_turtle(convvideo_listing)
        reference = to_rdflib(convvideo_listing)
        assert len(ours) == len(reference) == 15
        assert rdflib.compare.isomorphic(to_rdflib(serialize_turtle(ours)), reference)


class TestTurtleSerializer:
    """Tests for deterministic Turtle output."""

    def test_empty_graph_serializes_to_empty_string(self):
        """Test that the empty graph has an empty serialization."""
        assert serialize_turtle(Graph()) == ""

    def test_single_triple(self):
        """Test the exact layout of a one-triple document."""
        graph = parse_turtle("@prefix ex: <http://example.org/> . ex:a ex:p ex:b .")
        assert serialize_turtle(graph) == "@prefix ex: <http://example.org/> .\n\nex:a ex:p ex:b .\n"

    def test_type_first_and_literals_typed(self):
        """Test that rdf:type is written first and plain literals carry xsd:string."""
        graph = parse_turtle(
            "@prefix ex: <http://example.org/> .\n"
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
            'ex:a ex:b "x" ; a ex:C .'
        )
        text = serialize_turtle(graph)
        assert 'ex:a a ex:C ;\n    ex:b "x"^^xsd:string .' in text

    def test_single_use_blank_nodes_are_inlined(self, convvideo_listing):
        """Test that report branches are written as nested [ ] lists."""
        text = serialize_turtle(parse_turtle(convvideo_listing))
        assert "_:" not in text
        assert '[ kpi:latency "493.1097 ms"^^xsd:string ]' in text

    def test_blank_cycle_gets_labels(self):
        """Test that a cycle of blank nodes is still serialized and re-parsed."""
        first, second = BlankNode("c1"), BlankNode("c2")
        graph = Graph([Triple(first, ex("p"), second), Triple(second, ex("p"), first)], {"ex": EX})
        text = serialize_turtle(graph)
        assert "_:b" in text
        assert isomorphic(parse_turtle(text), graph)

    def test_blank_labels_do_not_depend_on_node_ids(self):
        """Test that blank subjects are ordered by their triples, not by node id."""

        def two_blank_subjects(x_id: str, y_id: str) -> Graph:
            return Graph([
                Triple(BlankNode(x_id), ex("p"), Literal("x")),
                Triple(BlankNode(y_id), ex("p"), Literal("y")),
            ], {"ex": EX})

        text = serialize_turtle(two_blank_subjects("n9", "n10"))
        assert text == serialize_turtle(two_blank_subjects("n10", "n9"))
        assert text == serialize_turtle(two_blank_subjects("n99", "n100"))
        assert text.index('"x"') < text.index('"y"')
        assert text.startswith('@prefix ex: <http://example.org/> .\n\n_:b0 ex:p "x"')

    def test_serialization_is_byte_stable(self, mcpttdata_listing):
        """Test that repeated serialization of a graph gives identical bytes."""
        graph = parse_turtle(mcpttdata_listing)
        assert serialize_turtle(graph) == serialize_turtle(graph)

    def test_random_round_trip(self):
        """Test parse(serialize(G)) is isomorphic to G for randomized graphs."""
        rng = random.Random(20231)
        for _ in range(100):
            graph = random_graph(rng)
            text = serialize_turtle(graph)
            assert isomorphic(parse_turtle(text), graph), text
            assert serialize_turtle(graph) == text

    def test_random_round_trip_against_reference(self):
        """Test that the reference parser reads our output as the same graph."""
        rng = random.Random(7)
        for _ in range(30):
            graph = random_graph(rng)
            text = serialize_turtle(graph)
            if not text:
                continue
            assert len(to_rdflib(text)) == len(graph)


class TestBlankStructure:
    """Tests for blank-node structure through a serialize/parse cycle."""

    def test_relabelled_blank_nodes_serialize_identically(self):
        """Test that renaming blank nodes does not change the output."""
        a, b = BlankNode("a"), BlankNode("b")
        first = Graph([Triple(ex("s"), ex("p"), a), Triple(a, ex("q"), Literal("1"))])
        second = Graph([Triple(ex("s"), ex("p"), b), Triple(b, ex("q"), Literal("1"))])
        assert serialize_turtle(first) == serialize_turtle(second)

    def test_changed_literal_is_kept_apart(self):
        """Test that blank nodes with different values stay distinguishable."""
        a = BlankNode("a")
        first = Graph([Triple(ex("s"), ex("p"), a), Triple(a, ex("q"), Literal("1"))])
        second = Graph([Triple(ex("s"), ex("p"), a), Triple(a, ex("q"), Literal("2"))])
        assert not isomorphic(parse_turtle(serialize_turtle(first)), second)

    def test_ring_and_pairs_of_blank_nodes(self):
        """Test that a 4-ring and two 2-cycles survive re-parsing as different shapes."""
        nodes = [BlankNode(f"s{i}") for i in range(4)]
        ring = Graph([Triple(nodes[i], ex("next"), nodes[(i + 1) % 4]) for i in range(4)])
        pairs = Graph([
            Triple(nodes[0], ex("next"), nodes[1]),
            Triple(nodes[1], ex("next"), nodes[0]),
            Triple(nodes[2], ex("next"), nodes[3]),
            Triple(nodes[3], ex("next"), nodes[2]),
        ])
        ring_back = parse_turtle(serialize_turtle(ring))
        pairs_back = parse_turtle(serialize_turtle(pairs))
        assert isomorphic(ring_back, ring)
        assert isomorphic(pairs_back, pairs)
        assert not isomorphic(ring_back, pairs)
