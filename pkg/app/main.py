"""
Command-line entry point.

Subcomandos disponíveis:
- catalog  - Lista os serviços do catálogo (--json para o espelho JSON)
- deploy   - Reconhece, traduz e valida intenções (sem simulação)
- run      - Fluxo completo: implantação, simulação, medição e relatórios
- query    - Valor de um KPI pelo template de extração
- extend   - Registra um novo serviço e grava o catálogo estendido
- report   - Resume os relatórios gravados em um diretório

Códigos de saída: 0 sucesso, 1 falha de domínio, 2 erro de uso.

Example:
    $ python -m app.main run --intent "ConvVideo" --scenario congested --out out/
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from app.core.config import build_sim_config, load_sim_config, settings
from app.core.exceptions import IntentForgeError, InvalidSpec, ReportFormatError
from app.knowledge.catalog import (
    Catalog,
    catalog_to_json,
    dump_catalog,
    kpi_of,
    load_catalog,
    parse_service_spec,
    register_service,
)
from app.knowledge.vocabulary import KPIS, kpi_by_name
from app.models import ComplianceStatus, Scenario
from app.monitor.compliance import format_value
from app.monitor.reports import read_report
from app.netsim.scenarios import scenario
from app.orchestrator import IntentOrchestrator, RunResult, write_artifacts, write_intents
from app.rdf.turtle import parse_turtle
from app.schemas import Quantity, SimConfig

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    """Logging em stderr; INFO no modo debug, senão settings.log_level."""
    logging.basicConfig(
        level=logging.INFO if settings.debug else settings.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def _catalog(args: argparse.Namespace) -> Catalog:
    return load_catalog(args.catalog)


# ==================== Subcomandos ====================


def cmd_catalog(args: argparse.Namespace) -> int:
    """Uma linha por serviço: nome, recurso e KPIs."""
    catalog = _catalog(args)
    if args.json:
        print(catalog_to_json(catalog))
        return 0

    for name, spec in catalog.specs.items():
        values = " ".join(
            f"{definition.short_name}={Quantity(value=getattr(spec, definition.spec_field), unit=definition.unit)}"
            for definition in KPIS
            if getattr(spec, definition.spec_field) is not None
        )
        print(f"{name:<16} {spec.resource.value:<5} {values}")
    return 0


def cmd_deploy(args: argparse.Namespace) -> int:
    """Implanta as intenções e grava as intenções de rede; 1 se houver conflito."""
    catalog = _catalog(args)
    orchestrator = IntentOrchestrator(catalog, load_sim_config(args.config))
    deployments = orchestrator.deploy(args.intent)
    write_intents(deployments, args.out)

    for deployment in deployments:
        intent = deployment.network_intent
        status = "admitida" if deployment.admitted else f"rejeitada: {deployment.conflict}"
        print(f"{intent.intent_id:<24} {intent.service:<16} {intent.resource.value:<5} {status}")
    return 0 if all(d.admitted for d in deployments) else 1


def _run_config(args: argparse.Namespace) -> SimConfig:
    """Precedência: flags > arquivo de configuração > padrões embarcados."""
    config = scenario(args.scenario, load_sim_config(args.config))
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.report_interval is not None:
        overrides["report_interval_s"] = args.report_interval
    elif config.report_interval_s is None and settings.report_interval_s is not None:
        overrides["report_interval_s"] = settings.report_interval_s
    if overrides:
        config = build_sim_config({**config.model_dump(), **overrides})
    return config


def _print_table(result: RunResult) -> None:
    print(f"{'INTENÇÃO':<24} {'SERVIÇO':<16} {'LATÊNCIA':>16} {'LIMIAR':>8} {'PER':>12} ESTADO")
    for intent_id, report in result.reports.items():
        verdicts = {v.kpi: v for v in report.verdicts}
        latency = verdicts["kpi:latency"]
        per = verdicts["kpi:packeterrorrate"]
        service_name = next(
            d.network_intent.service for d in result.deployments if d.network_intent.intent_id == intent_id
        )
        print(
            f"{intent_id:<24} {service_name:<16} {format_value(latency.observed, latency.unit):>16} "
            f"{str(Quantity(value=latency.threshold, unit=latency.unit)):>8} {format_value(per.observed):>12} "
            f"{report.state_event.value}"
        )


def cmd_run(args: argparse.Namespace) -> int:
    """Fluxo completo; 1 em conflito de validação ou (com --strict) degradação."""
    catalog = _catalog(args)
    orchestrator = IntentOrchestrator(catalog, _run_config(args))
    deployments = orchestrator.deploy(args.intent)

    rejected = [d for d in deployments if not d.admitted]
    if rejected:
        for deployment in rejected:
            print(
                f"erro: intenção {deployment.network_intent.intent_id} rejeitada: {deployment.conflict}",
                file=sys.stderr,
            )
        return 1

    result = orchestrator.simulate(deployments)
    write_artifacts(result, args.out)
    _print_table(result)

    if args.strict and result.degraded:
        print(f"erro: intenções degradadas: {', '.join(result.degraded)}", file=sys.stderr)
        return 1
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    """Imprime o valor do KPI com a unidade (ex.: '150 ms')."""
    catalog = _catalog(args)
    definition = kpi_by_name(args.kpi)
    value = kpi_of(catalog, args.service, definition.curie)
    print(Quantity(value=value.lexical, unit=definition.unit))
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    """Registra o serviço do arquivo --spec e grava o catálogo estendido."""
    catalog = _catalog(args)
    try:
        data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as e:
        raise InvalidSpec("spec", f"arquivo ilegível: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidSpec("spec", f"JSON inválido: {e}") from e
    if not isinstance(data, dict):
        raise InvalidSpec("spec", "esperado um objeto JSON")

    extended = register_service(catalog, parse_service_spec(data))
    out = args.out or settings.output_dir / "catalog.ttl"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dump_catalog(extended), encoding="utf-8")
    print(f"Catálogo estendido ({len(extended.specs)} serviços) gravado em {out}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    """Resumo legível dos relatórios report-*.ttl do diretório."""
    directory = args.dir or settings.output_dir / "reports"
    paths = sorted(directory.glob("report-*.ttl")) if directory.is_dir() else []
    if not paths:
        print("Nenhum relatório encontrado")
        return 0

    for path in paths:
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise ReportFormatError(f"{path.name}: arquivo não é UTF-8 ({e.reason})") from e
        summary = read_report(parse_turtle(text))
        print(f"{summary.intent_id} {summary.service} {summary.state_event.value}")
        for item in summary.verdicts:
            if item.status is ComplianceStatus.DEGRADED:
                print(
                    f"  {kpi_by_name(item.kpi).short_name} {format_value(item.observed, item.unit)} "
                    f"> {Quantity(value=item.threshold, unit=item.unit)}"
                )
    return 0


# ==================== Parser ====================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Modelagem de intenções baseada em conhecimento para redes celulares",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    with_catalog = argparse.ArgumentParser(add_help=False)
    with_catalog.add_argument("--catalog", type=Path, help="Catálogo Turtle (padrão: embarcado)")

    with_intents = argparse.ArgumentParser(add_help=False)
    with_intents.add_argument("--intent", action="append", required=True, help="Texto da intenção (repetível)")
    with_intents.add_argument("--config", type=Path, help="Configuração do simulador (JSON ou key=value)")
    with_intents.add_argument("--out", type=Path, default=settings.output_dir, help="Diretório de saída")

    catalog = subparsers.add_parser("catalog", parents=[with_catalog], help="Lista os serviços")
    catalog.add_argument("--json", action="store_true", help="Saída JSON")
    catalog.set_defaults(handler=cmd_catalog)

    deploy = subparsers.add_parser("deploy", parents=[with_catalog, with_intents], help="Implanta intenções")
    deploy.set_defaults(handler=cmd_deploy)

    run = subparsers.add_parser("run", parents=[with_catalog, with_intents], help="Execução completa")
    run.add_argument("--scenario", choices=[s.value for s in Scenario], default=Scenario.NORMAL.value)
    run.add_argument("--seed", type=int, help="Semente do gerador de perdas")
    run.add_argument("--strict", action="store_true", help="Saída 1 se alguma intenção degradar")
    run.add_argument("--report-interval", type=float, help="Intervalo de relatórios periódicos (s)")
    run.set_defaults(handler=cmd_run)

    query = subparsers.add_parser("query", parents=[with_catalog], help="Consulta um KPI")
    query.add_argument("--service", required=True)
    query.add_argument("--kpi", required=True)
    query.set_defaults(handler=cmd_query)

    extend = subparsers.add_parser("extend", parents=[with_catalog], help="Registra um serviço")
    extend.add_argument("--spec", type=Path, required=True, help="ServiceSpec em JSON")
    extend.add_argument("--out", type=Path, help="Catálogo estendido (padrão: <output_dir>/catalog.ttl)")
    extend.set_defaults(handler=cmd_extend)

    report = subparsers.add_parser("report", help="Resume relatórios gravados")
    report.add_argument("--dir", type=Path, help="Diretório dos relatórios (padrão: <output_dir>/reports)")
    report.set_defaults(handler=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa a CLI.

    Returns:
        int: Código de saída (0 sucesso, 1 falha de domínio, 2 uso)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    configure_logging()
    try:
        return args.handler(args)
    except IntentForgeError as e:
        logger.info(f"Falha em {args.command}: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
