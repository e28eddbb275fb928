"""
Domain exceptions.

Este módulo define a hierarquia de erros do intent-forge. Todos os erros de
domínio herdam de IntentForgeError, o que permite à CLI tratá-los de forma
uniforme (exit code 1), enquanto erros de uso ficam com o argparse (exit 2).

Cada exceção guarda seus campos estruturados como atributos, além de uma
mensagem legível.
"""

from typing import Sequence


class IntentForgeError(Exception):
    """Erro base de todos os erros de domínio."""


# ==================== RDF ====================


class TurtleSyntaxError(IntentForgeError):
    """Documento Turtle malformado."""

    def __init__(self, line: int, column: int, message: str) -> None:
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


class UnknownPrefix(IntentForgeError):
    """Nome prefixado usa um prefixo não declarado."""

    def __init__(self, label: str) -> None:
        self.label = label
        super().__init__(f"prefixo não declarado: '{label}:'")


class MalformedTerm(IntentForgeError):
    """Termo RDF inválido (ex.: IRI vazio ou com espaços)."""


class MalformedTriple(IntentForgeError):
    """Tripla com predicado que não é IRI ou sujeito literal."""


# ==================== SPARQL ====================


class QuerySyntaxError(IntentForgeError):
    """Consulta SPARQL malformada."""

    def __init__(self, position: int, message: str) -> None:
        self.position = position
        self.message = message
        super().__init__(f"posição {position}: {message}")


class UnsupportedFeature(IntentForgeError):
    """Construção SPARQL fora do subconjunto suportado."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"recurso SPARQL não suportado: {name}")


class MissingPlaceholder(IntentForgeError):
    """Template de consulta com placeholder sem valor."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"placeholder sem valor: {name}")


# ==================== Knowledge Base ====================


class UnknownService(IntentForgeError):
    """Serviço inexistente no catálogo."""

    def __init__(self, service: str) -> None:
        self.service = service
        super().__init__(f"serviço desconhecido: {service}")


class UnknownKpi(IntentForgeError):
    """KPI inexistente (ou ausente para o serviço consultado)."""

    def __init__(self, kpi: str) -> None:
        self.kpi = kpi
        super().__init__(f"KPI desconhecido: {kpi}")


class AmbiguousResult(IntentForgeError):
    """Consulta que deveria ter um único resultado retornou vários."""

    def __init__(self, service: str, kpi: str, count: int) -> None:
        self.service = service
        self.kpi = kpi
        self.count = count
        super().__init__(f"{count} valores para {kpi} de {service} (grafo corrompido?)")


class DuplicateService(IntentForgeError):
    """Serviço já registrado no catálogo."""

    def __init__(self, service: str) -> None:
        self.service = service
        super().__init__(f"serviço já existe no catálogo: {service}")


class InvalidSpec(IntentForgeError):
    """Especificação de serviço inválida."""

    def __init__(self, field: str, reason: str) -> None:
        self.field = field
        self.reason = reason
        super().__init__(f"campo '{field}' inválido: {reason}")


# ==================== Intent Pipeline ====================


class NoServiceRecognized(IntentForgeError):
    """Nenhum serviço reconhecido no texto da intenção."""

    def __init__(self, text: str) -> None:
        self.text = text
        super().__init__(f"nenhum serviço reconhecido em '{text}'")


class AmbiguousIntent(IntentForgeError):
    """Mais de um serviço reconhecido no texto da intenção."""

    def __init__(self, candidates: Sequence[str]) -> None:
        self.candidates = list(candidates)
        super().__init__(f"intenção ambígua, candidatos: {', '.join(self.candidates)}")


class IllegalTransition(IntentForgeError):
    """Evento de ciclo de vida não permitido no estado atual."""

    def __init__(self, state: str, event: str) -> None:
        self.state = state
        self.event = event
        super().__init__(f"transição ilegal: {event} em {state}")


# ==================== Simulation ====================


class InvalidConfig(IntentForgeError):
    """Configuração inválida (simulador ou arquivo de configuração)."""

    def __init__(self, field: str, reason: str = "") -> None:
        self.field = field
        self.reason = reason
        detail = f": {reason}" if reason else ""
        super().__init__(f"configuração inválida em '{field}'{detail}")


class UnknownScenario(IntentForgeError):
    """Cenário de simulação desconhecido."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"cenário desconhecido: {name}")


class EmptyRecord(IntentForgeError):
    """Registro de fluxo sem pacotes enviados."""


# ==================== Monitoring / Reporting ====================


class UnitMismatch(IntentForgeError):
    """Unidade do limiar difere da unidade medida."""

    def __init__(self, kpi: str) -> None:
        self.kpi = kpi
        super().__init__(f"unidade incompatível para {kpi}")


class MissingThreshold(IntentForgeError):
    """KPI medido sem limiar na intenção de rede."""

    def __init__(self, kpi: str) -> None:
        self.kpi = kpi
        super().__init__(f"limiar ausente para {kpi}")


class EmptyVerdicts(IntentForgeError):
    """Relatório de expectativa sem veredictos."""


class EmptyReports(IntentForgeError):
    """Relatório de intenção sem relatórios de expectativa."""


class ReportFormatError(IntentForgeError):
    """Relatório Turtle sem a estrutura esperada."""
