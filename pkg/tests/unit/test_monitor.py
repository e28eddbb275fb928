"""
Unit tests for compliance evaluation and reports.
Validates verdicts, value formatting, the report goldens and report extraction.
"""

import random
from decimal import Decimal

import pytest
import rdflib
from rdflib.compare import isomorphic as rdflib_isomorphic

from app.core.exceptions import EmptyReports, EmptyVerdicts, MissingThreshold, ReportFormatError, UnitMismatch
from app.knowledge.vocabulary import icm, imo, report_ns
from app.models import ComplianceReason, ComplianceStatus, LifecycleEvent, StateEvent
from app.monitor.compliance import UNOBSERVABLE, format_value, judge, parse_value, quantize, verdict
from app.monitor.reports import (
    expectation_report,
    extract_verdicts,
    feedback,
    intent_report,
    read_report,
    report_summary,
    state_event_of,
)
from app.rdf.graph import Graph, subgraph
from app.rdf.terms import Iri
from app.rdf.turtle import parse_turtle, serialize_turtle
from app.schemas import Quantity
from tests.conftest import isomorphic


def report_node(intent_id: str) -> Iri:
    return Iri(report_ns(intent_id) + "ER2_ServiceProperty")


def random_verdicts(rng: random.Random) -> list:
    """One or two verdicts with random observations around the threshold."""
    verdicts = []
    for kpi, unit in rng.sample([("kpi:latency", "ms"), ("kpi:packeterrorrate", "")], rng.randint(1, 2)):
        threshold = Decimal(rng.choice(["50", "100", "150"]))
        observed = None if rng.random() < 0.1 else Decimal(rng.randint(0, 200))
        verdicts.append(verdict(kpi, observed, threshold, unit))
    return verdicts


class TestQuantize:
    """Tests for observation quantization and formatting."""

    def test_latency_step(self):
        """Test the latency quantum of 0.0001 ms."""
        assert quantize("kpi:latency", 493.10968) == Decimal("493.1097")

    def test_half_even(self):
        """Test that ties round to the even digit."""
        assert quantize("kpi:latency", 0.00015) == Decimal("0.0002")
        assert quantize("kpi:latency", 0.00025) == Decimal("0.0002")

    def test_per_step(self):
        """Test the PER quantum of 1e-9."""
        assert quantize("kpi:packeterrorrate", 0.25) == Decimal("0.250000000")

    def test_unobservable(self):
        """Test that None stays None."""
        assert quantize("kpi:latency", None) is None

    @pytest.mark.parametrize(
        "value, unit, expected",
        [
            (Decimal("493.1097"), "ms", "493.1097 ms"),
            (Decimal("17.6459"), "ms", "17.6459 ms"),
            (Decimal("0E-9"), "", "0"),
            (Decimal("0.001000000"), "", "0.001"),
            (None, "ms", UNOBSERVABLE),
        ],
    )
    def test_format_value(self, value, unit, expected):
        """Test the report forms of observed values."""
        assert format_value(value, unit) == expected

    def test_parse_value_inverts_format(self):
        """Test that parsing a formatted value gives back the number."""
        assert parse_value("493.1097 ms", "ms") == Decimal("493.1097")
        assert parse_value("0") == Decimal(0)
        assert parse_value(UNOBSERVABLE, "ms") is None

    def test_parse_value_rejects_wrong_unit(self):
        """Test that a different unit suffix is rejected."""
        with pytest.raises(ValueError):
            parse_value("493.1097 s", "ms")
        with pytest.raises(ValueError):
            parse_value("fast")


class TestVerdict:
    """Tests for single-KPI verdicts."""

    def test_equal_is_compliant(self):
        """Test that an observation equal to the threshold complies."""
        item = verdict("kpi:latency", Decimal("150"), Decimal("150"), "ms")
        assert item.status is ComplianceStatus.COMPLIANT
        assert item.reason is ComplianceReason.MEETS_REQUIREMENT

    def test_above_by_one_quantum_is_degraded(self):
        """Test that exceeding the threshold by the smallest step degrades."""
        item = verdict("kpi:latency", Decimal("150.0001"), Decimal("150"), "ms")
        assert item.status is ComplianceStatus.DEGRADED
        assert item.reason is ComplianceReason.NOT_COMPLIANT

    def test_unobservable_is_degraded(self):
        """Test that a KPI without samples is degraded."""
        assert verdict("kpi:latency", None, Decimal("150"), "ms").status is ComplianceStatus.DEGRADED


class TestJudge:
    """Tests for judging a measurement against an intent."""

    def test_convvideo_degraded_latency(self, make_intent, measurement):
        """Test a ConvVideo flow over its 150 ms budget."""
        verdicts = judge(measurement("I-ConvVideo-1", 493.10968), make_intent("ConvVideo"))
        assert [v.kpi for v in verdicts] == ["kpi:latency", "kpi:packeterrorrate"]
        assert [v.status for v in verdicts] == [ComplianceStatus.DEGRADED, ComplianceStatus.COMPLIANT]
        assert verdicts[0].observed == Decimal("493.1097")
        assert verdicts[0].threshold == Decimal("150")

    def test_per_over_threshold(self, make_intent, measurement):
        """Test that losses above the PER budget degrade."""
        verdicts = judge(measurement("I-McpttData-1", 20.0, per=0.01), make_intent("McpttData"))
        assert [v.status for v in verdicts] == [ComplianceStatus.COMPLIANT, ComplianceStatus.DEGRADED]

    def test_missing_threshold(self, flat_intent, measurement):
        """Test that an intent without a PER threshold cannot be judged."""
        intent = flat_intent()
        thresholds = {k: v for k, v in intent.thresholds.items() if k != "kpi:packeterrorrate"}
        with pytest.raises(MissingThreshold):
            judge(measurement("I-Test-1", 10.0), intent.model_copy(update={"thresholds": thresholds}))

    def test_unit_mismatch(self, flat_intent, measurement):
        """Test that a latency threshold in another unit is rejected."""
        intent = flat_intent()
        thresholds = {**intent.thresholds, "kpi:latency": Quantity(value=Decimal("0.1"), unit="s")}
        with pytest.raises(UnitMismatch):
            judge(measurement("I-Test-1", 10.0), intent.model_copy(update={"thresholds": thresholds}))


class TestExpectationReport:
    """Tests for the expectation report graph."""

    def test_convvideo_golden(self, make_intent, measurement, convvideo_listing):
        """Test the degraded ConvVideo report against the reference listing."""
        intent = make_intent("ConvVideo")
        graph = expectation_report(judge(measurement(intent.intent_id, 493.1097), intent), intent)
        assert isomorphic(subgraph(graph, report_node(intent.intent_id)), parse_turtle(convvideo_listing))

    def test_mcpttdata_golden(self, make_intent, measurement, mcpttdata_listing):
        """Test the compliant McpttData report against the reference listing."""
        intent = make_intent("McpttData")
        graph = expectation_report(judge(measurement(intent.intent_id, 17.6459), intent), intent)
        assert isomorphic(subgraph(graph, report_node(intent.intent_id)), parse_turtle(mcpttdata_listing))

    def test_golden_survives_turtle_round_trip(self, make_intent, measurement, convvideo_listing):
        """Test that the serialized report still matches the reference listing."""
        intent = make_intent("ConvVideo")
        graph = expectation_report(judge(measurement(intent.intent_id, 493.1097), intent), intent)
        reparsed = parse_turtle(serialize_turtle(graph))
        assert isomorphic(subgraph(reparsed, report_node(intent.intent_id)), parse_turtle(convvideo_listing))

    def test_golden_matches_rdflib_isomorphism(self, make_intent, measurement, convvideo_listing):
        """Test the ConvVideo golden with the rdflib isomorphism check."""
        intent = make_intent("ConvVideo")
        graph = expectation_report(judge(measurement(intent.intent_id, 493.1097), intent), intent)
        ours = rdflib.Graph().parse(data=serialize_turtle(subgraph(graph, report_node(intent.intent_id))), format="turtle")
        expected = rdflib.Graph().parse(data=convvideo_listing, format="turtle")
        assert rdflib_isomorphic(ours, expected)

    def test_one_branch_per_verdict(self, make_intent, measurement):
        """Test one compliance branch per verdict."""
        intent = make_intent("ConvVideo")
        verdicts = judge(measurement(intent.intent_id, 80.0), intent)
        graph = expectation_report(verdicts, intent)
        branches = graph.objects(report_node(intent.intent_id), icm("compliant"))
        assert len(branches) == 2
        assert graph.objects(report_node(intent.intent_id), icm("degraded")) == []

    def test_extract_inverts_report(self, make_intent, measurement):
        """Test that extracting verdicts gives back what was reported."""
        intent = make_intent("ConvVideo")
        verdicts = judge(measurement(intent.intent_id, 493.10968, per=0.002), intent)
        assert extract_verdicts(expectation_report(verdicts, intent)) == verdicts

    def test_extract_unobservable(self, make_intent, measurement):
        """Test that an unobservable latency survives extraction."""
        intent = make_intent("ConvVideo")
        verdicts = judge(measurement(intent.intent_id, None, per=1.0), intent)
        extracted = extract_verdicts(expectation_report(verdicts, intent))
        assert extracted[0].observed is None
        assert extracted[0].status is ComplianceStatus.DEGRADED

    def test_empty_verdicts(self, make_intent):
        """Test that a report needs at least one verdict."""
        with pytest.raises(EmptyVerdicts):
            expectation_report([], make_intent("ConvVideo"))

    def test_extract_from_unrelated_graph(self):
        """Test that a graph without report branches is a format error."""
        with pytest.raises(ReportFormatError):
            extract_verdicts(Graph())


class TestIntentReport:
    """Tests for intent reports and lifecycle feedback."""

    def test_degraded_report(self, make_intent, measurement):
        """Test the state, number and timestamp of a degraded report."""
        intent = make_intent("ConvVideo")
        expectation = expectation_report(judge(measurement(intent.intent_id, 493.1097), intent), intent)
        report = intent_report(intent, [expectation], timestamp_ms=1000.0, report_number=3)

        node = Iri(report_ns(intent.intent_id) + "IR3")
        assert report.state_event is StateEvent.STATE_DEGRADES
        assert report.graph.value(node, icm("intentHandlingState")) == imo("StateDegrades")
        assert report.graph.value(node, icm("reportNumber")).lexical == "3"
        assert report.graph.value(node, icm("hasExpectationReport")) == report_node(intent.intent_id)
        assert feedback(report) is LifecycleEvent.REPORT_DEGRADED

    def test_compliant_report(self, make_intent, measurement):
        """Test that an all-compliant report feeds back ReportCompliant."""
        intent = make_intent("McpttData")
        expectation = expectation_report(judge(measurement(intent.intent_id, 17.6459), intent), intent)
        report = intent_report(intent, [expectation])
        assert report.state_event is StateEvent.STATE_COMPLIES
        assert feedback(report) is LifecycleEvent.REPORT_COMPLIANT

    def test_empty_reports(self, make_intent):
        """Test that an intent report needs an expectation report."""
        with pytest.raises(EmptyReports):
            intent_report(make_intent("ConvVideo"), [])

    def test_state_event_biconditional(self):
        """Test StateComplies iff no verdict is degraded, on randomized verdict lists."""
        rng = random.Random(1000)
        for _ in range(1000):
            verdicts = random_verdicts(rng)
            all_compliant = all(v.status is ComplianceStatus.COMPLIANT for v in verdicts)
            assert (state_event_of(verdicts) is StateEvent.STATE_COMPLIES) == all_compliant

    def test_feedback_matches_verdicts(self, flat_intent):
        """Test the report feedback against the verdicts it was built from."""
        rng = random.Random(7)
        intent = flat_intent()
        for number in range(1, 51):
            verdicts = random_verdicts(rng)
            report = intent_report(intent, [expectation_report(verdicts, intent)], report_number=number)
            degraded = any(v.status is ComplianceStatus.DEGRADED for v in verdicts)
            assert (feedback(report) is LifecycleEvent.REPORT_DEGRADED) == degraded


class TestReadReport:
    """Tests for reading written reports back."""

    def test_read_after_round_trip(self, make_intent, measurement):
        """Test the summary of a serialized and reparsed intent report."""
        intent = make_intent("ConvVideo")
        verdicts = judge(measurement(intent.intent_id, 493.1097), intent)
        report = intent_report(intent, [expectation_report(verdicts, intent)], timestamp_ms=1005.04)

        summary = read_report(parse_turtle(serialize_turtle(report.graph)))
        assert summary.intent_id == intent.intent_id
        assert summary.service == "ConvVideo"
        assert summary.state_event is StateEvent.STATE_DEGRADES
        assert summary.timestamp_ms == 1005.04
        assert summary.verdicts == verdicts
        assert summary == report_summary(report, "ConvVideo")

    def test_expectation_report_alone_is_rejected(self, make_intent, measurement):
        """Test that a graph without an intent report node is a format error."""
        intent = make_intent("ConvVideo")
        graph = expectation_report(judge(measurement(intent.intent_id, 10.0), intent), intent)
        with pytest.raises(ReportFormatError):
            read_report(graph)
