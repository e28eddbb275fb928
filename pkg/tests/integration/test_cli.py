"""
Integration tests for the command-line interface.
Runs the subcommands end to end through main() with temporary directories.
"""

import json

import pytest

from app.main import main
from tests.conftest import ALL_SERVICES, DISCRETE_AUTOMATION


def run_args(out, *extra):
    args = ["run", "--out", str(out), *extra]
    for name in ALL_SERVICES:
        args += ["--intent", name]
    return args


def tree_bytes(root) -> dict:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


class TestRun:
    """Tests for the full run subcommand."""

    def test_normal_scenario_all_comply(self, tmp_path, capsys):
        """Test that every catalog service complies on the uncongested link."""
        assert main(run_args(tmp_path, "--strict")) == 0
        output = capsys.readouterr().out
        assert output.count("StateComplies") == 11
        assert "StateDegrades" not in output

    def test_congested_scenario_degrades_bulk_gbr_flows(self, tmp_path, capsys):
        """Test that congestion degrades exactly the GBR flows above their guaranteed rate."""
        assert main(run_args(tmp_path, "--scenario", "congested", "--strict")) == 1
        captured = capsys.readouterr()
        degraded = sorted(line.split()[1] for line in captured.out.splitlines() if line.endswith("StateDegrades"))
        assert degraded == ["ConvVideo", "ProcessMonitor"]
        assert "intenções degradadas" in captured.err

    def test_congested_without_strict_succeeds(self, tmp_path):
        """Test that degradation alone does not fail a run."""
        assert main(run_args(tmp_path, "--scenario", "congested")) == 0

    def test_artifacts_written(self, tmp_path):
        """Test the output tree of a run."""
        assert main(["run", "--intent", "ConvVideo", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "intents" / "I-ConvVideo-1.ttl").is_file()
        assert (tmp_path / "reports" / "report-I-ConvVideo-1.ttl").is_file()
        summary = json.loads((tmp_path / "reports" / "report-I-ConvVideo-1.json").read_text(encoding="utf-8"))
        assert summary["state_event"] == "StateComplies"
        assert (tmp_path / "measurements" / "packets.csv").is_file()
        assert (tmp_path / "measurements" / "flows.csv").is_file()

    def test_periodic_reports(self, tmp_path):
        """Test that --report-interval writes one report per window."""
        assert main(["run", "--intent", "ConvVideo", "--out", str(tmp_path), "--report-interval", "0.25"]) == 0
        periodic = sorted(p.name for p in (tmp_path / "reports" / "periodic").iterdir())
        assert periodic == [f"report-I-ConvVideo-1-{n}.ttl" for n in range(1, 5)]

    def test_outputs_are_reproducible(self, tmp_path):
        """Test that two runs with equal inputs write identical bytes."""
        assert main(run_args(tmp_path / "a", "--scenario", "congested")) == 0
        assert main(run_args(tmp_path / "b", "--scenario", "congested")) == 0
        first, second = tree_bytes(tmp_path / "a"), tree_bytes(tmp_path / "b")
        assert first.keys() == second.keys()
        assert first == second

    def test_unrecognized_intent(self, tmp_path, capsys):
        """Test that text naming no service fails with exit code 1."""
        assert main(["run", "--intent", "hello world", "--out", str(tmp_path)]) == 1
        assert "erro:" in capsys.readouterr().err

    def test_capacity_conflict(self, tmp_path, capsys):
        """Test that a GBR intent beyond link capacity aborts the run."""
        config = tmp_path / "sim.conf"
        config.write_text("link_capacity_bps=1500000\n", encoding="utf-8")
        args = ["run", "--intent", "ConvVideo", "--intent", "ConvVoice", "--config", str(config)]
        assert main([*args, "--out", str(tmp_path / "out")]) == 1
        assert "insufficient GBR capacity" in capsys.readouterr().err
        assert not (tmp_path / "out" / "reports").exists()

    def test_unknown_flag(self, capsys):
        """Test that usage errors exit with code 2."""
        assert main(["run", "--bogus"]) == 2


class TestDeploy:
    """Tests for the deploy subcommand."""

    def test_writes_network_intents(self, tmp_path, capsys):
        """Test that deploy writes Turtle and JSON network intents."""
        assert main(["deploy", "--intent", "McpttData", "--out", str(tmp_path)]) == 0
        assert "admitida" in capsys.readouterr().out
        data = json.loads((tmp_path / "intents" / "I-McpttData-1.json").read_text(encoding="utf-8"))
        assert data["resource"] == "NGBR"


class TestCatalogAndQuery:
    """Tests for the catalog, query and extend subcommands."""

    def test_catalog_lists_services(self, capsys):
        """Test one line per built-in service."""
        assert main(["catalog"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 11
        assert sorted(line.split()[0] for line in lines) == sorted(ALL_SERVICES)

    def test_catalog_json(self, capsys):
        """Test the JSON mirror output."""
        assert main(["catalog", "--json"]) == 0
        assert capsys.readouterr().out.count('"name"') == 11

    @pytest.mark.parametrize("service, expected", [("ConvVideo", "150 ms"), ("ProcessMonitor", "50 ms")])
    def test_query_latency(self, capsys, service, expected):
        """Test the latency lookup with its unit."""
        assert main(["query", "--service", service, "--kpi", "latency"]) == 0
        assert capsys.readouterr().out.strip() == expected

    def test_query_unknown_service(self, capsys):
        """Test that an unknown service fails with exit code 1."""
        assert main(["query", "--service", "Teleport", "--kpi", "latency"]) == 1
        assert "Teleport" in capsys.readouterr().err

    def test_extend_then_query(self, tmp_path, capsys):
        """Test that the extended catalog answers queries for the new service."""
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(DISCRETE_AUTOMATION), encoding="utf-8")
        extended = tmp_path / "catalog.ttl"
        assert main(["extend", "--spec", str(spec), "--out", str(extended)]) == 0
        assert "12 serviços" in capsys.readouterr().out

        assert main(["query", "--catalog", str(extended), "--service", "DiscreteAutomation", "--kpi", "latency"]) == 0
        assert capsys.readouterr().out.strip() == "10 ms"

    def test_extend_duplicate(self, tmp_path):
        """Test that extending with an existing name fails."""
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({**DISCRETE_AUTOMATION, "name": "ConvVideo"}), encoding="utf-8")
        assert main(["extend", "--spec", str(spec), "--out", str(tmp_path / "c.ttl")]) == 1

    def test_extend_gbr_without_rate(self, tmp_path, capsys):
        """Test that a GBR spec without rate fails naming the field."""
        data = {key: value for key, value in DISCRETE_AUTOMATION.items() if key != "gbr_rate_bps"}
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps(data), encoding="utf-8")
        assert main(["extend", "--spec", str(spec), "--out", str(tmp_path / "c.ttl")]) == 1
        assert "gbr_rate_bps" in capsys.readouterr().err


class TestReport:
    """Tests for the report subcommand."""

    def test_empty_directory(self, tmp_path, capsys):
        """Test the message for a directory without reports."""
        assert main(["report", "--dir", str(tmp_path)]) == 0
        assert capsys.readouterr().out.strip() == "Nenhum relatório encontrado"

    def test_degraded_summary(self, tmp_path, capsys):
        """Test that degraded KPIs are listed under their intent."""
        assert main(["run", "--intent", "ConvVideo", "--scenario", "congested", "--out", str(tmp_path)]) == 0
        capsys.readouterr()

        assert main(["report", "--dir", str(tmp_path / "reports")]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "I-ConvVideo-1 ConvVideo StateDegrades"
        latency = next(line for line in lines[1:] if line.startswith("  latency "))
        assert latency.endswith("> 150 ms")

    def test_corrupted_report(self, tmp_path, capsys):
        """Test that an unreadable report fails with exit code 1."""
        (tmp_path / "report-I-X-1.ttl").write_text("this is not turtle", encoding="utf-8")
        assert main(["report", "--dir", str(tmp_path)]) == 1
        assert "erro:" in capsys.readouterr().err

    def test_report_that_is_not_utf8(self, tmp_path, capsys):
        """Test that a report file with invalid UTF-8 bytes fails with exit code 1."""
        (tmp_path / "report-I-X-1.ttl").write_bytes(b"\xff\xfe")
        assert main(["report", "--dir", str(tmp_path)]) == 1
        err = capsys.readouterr().err
        assert "erro:" in err
        assert "report-I-X-1.ttl" in err


class TestInputEncoding:
    """Tests for user-supplied files that are not valid UTF-8."""

    def test_config_file(self, tmp_path, capsys):
        """Test that a binary simulator config fails with exit code 1."""
        config = tmp_path / "sim.conf"
        config.write_bytes(b"link_capacity_bps=\xff\n")
        assert main(["run", "--intent", "ConvVideo", "--config", str(config), "--out", str(tmp_path)]) == 1
        assert "erro:" in capsys.readouterr().err

    def test_catalog_file(self, tmp_path, capsys):
        """Test that a binary catalog fails with exit code 1."""
        catalog = tmp_path / "catalog.ttl"
        catalog.write_bytes(b"\xff\xfe\x00")
        assert main(["query", "--catalog", str(catalog), "--service", "ConvVideo", "--kpi", "latency"]) == 1
        assert "erro:" in capsys.readouterr().err

    def test_extension_spec_file(self, tmp_path, capsys):
        """Test that a binary extension spec fails with exit code 1."""
        spec = tmp_path / "spec.json"
        spec.write_bytes(b"{\xff}")
        assert main(["extend", "--spec", str(spec), "--out", str(tmp_path / "c.ttl")]) == 1
        assert "erro:" in capsys.readouterr().err
