"""
Application configuration using Pydantic Settings.

Este módulo centraliza as configurações do intent-forge: parâmetros gerais,
taxa GBR padrão do catálogo, diretório de saída e o caminho do arquivo de
configuração do simulador.

As configurações são carregadas de variáveis de ambiente (prefixo
INTENT_FORGE_) ou do arquivo .env, usando Pydantic Settings para validação
e type hints.

A configuração do simulador (SimConfig) é carregada de JSON ou de um arquivo
texto key=value. Precedência: flags da CLI > arquivo de configuração >
valores padrão embarcados.
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.exceptions import InvalidConfig
from app.schemas import SimConfig

logger = logging.getLogger(__name__)

# Configuração padrão do simulador embarcada no pacote
DEFAULT_SIM_CONFIG_PATH = (
    Path(__file__).resolve().parent.parent / "netsim" / "resources" / "default-config.json"
)


class Settings(BaseSettings):
    """
    Configurações principais da aplicação.

    Todas as configurações podem ser sobrescritas por variáveis de ambiente
    com o prefixo INTENT_FORGE_ (ex.: INTENT_FORGE_CONFIG, INTENT_FORGE_DEBUG).

    Attributes:
        app_name: Nome da aplicação
        debug: Modo debug (logging em INFO)
        log_level: Nível de logging fora do modo debug

        config: Caminho do arquivo de configuração do simulador
        default_gbr_rate_bps: Taxa GBR atribuída a serviços GBR sem taxa explícita
        output_dir: Diretório padrão dos artefatos gerados
        report_interval_s: Intervalo do modo de relatório periódico (opcional)
        default_requester: Identificador do solicitante quando não informado
    """

    # Configurações da Aplicação
    app_name: str = Field(default="intent-forge", description="Nome da aplicação")
    debug: bool = Field(default=False, description="Modo debug (logging detalhado)")
    log_level: str = Field(default="WARNING", description="Nível de logging padrão")

    # Configurações do Simulador
    config: Optional[Path] = Field(
        default=None,
        description="Arquivo de configuração do simulador (JSON ou key=value)",
    )

    # Configurações do Catálogo
    default_gbr_rate_bps: int = Field(
        default=1_000_000,
        gt=0,
        description="Taxa GBR padrão por serviço GBR sem taxa explícita (bits/s)",
    )

    # Configurações de Saída
    output_dir: Path = Field(default=Path("out"), description="Diretório de artefatos")
    report_interval_s: Optional[float] = Field(
        default=None,
        gt=0,
        description="Intervalo de relatórios periódicos (segundos); None = só fim de execução",
    )
    default_requester: str = Field(
        default="user", description="Solicitante padrão das intenções"
    )

    model_config = SettingsConfigDict(
        env_prefix="INTENT_FORGE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


def _parse_key_value(text: str) -> dict[str, Any]:
    """
    Converte um arquivo texto key=value em dicionário.

    Linhas vazias e comentários (#) são ignorados. Valores são interpretados
    como JSON quando possível (números, listas, objetos); caso contrário
    ficam como string.

    Raises:
        InvalidConfig: Se uma linha não tiver o formato key=value
    """
    data: dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidConfig(f"line {number}", "esperado key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            data[key] = json.loads(value)
        except json.JSONDecodeError:
            data[key] = value
    return data


def build_sim_config(data: dict[str, Any]) -> SimConfig:
    """
    Valida um dicionário como SimConfig.

    Raises:
        InvalidConfig: Com o nome do primeiro campo inválido
    """
    try:
        return SimConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "config"
        raise InvalidConfig(field, error["msg"]) from e


def load_sim_config(path: Optional[Path] = None) -> SimConfig:
    """
    Carrega a configuração do simulador.

    Ordem de busca: caminho explícito, INTENT_FORGE_CONFIG, padrão embarcado.
    Arquivos de outros formatos que não JSON são lidos como key=value e
    mesclados sobre os valores padrão embarcados.

    Args:
        path: Caminho do arquivo (opcional)

    Returns:
        SimConfig: Configuração validada

    Raises:
        InvalidConfig: Se o arquivo não existir ou tiver valores inválidos

    Example:
        >>> config = load_sim_config()
        >>> config.link_capacity_bps
        100000000.0
    """
    defaults = json.loads(DEFAULT_SIM_CONFIG_PATH.read_text(encoding="utf-8"))
    source = path or settings.config
    if source is None:
        return build_sim_config(defaults)

    source = Path(source)
    if not source.is_file():
        raise InvalidConfig("config", f"arquivo não encontrado: {source}")

    try:
        text = source.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InvalidConfig("config", f"arquivo não é UTF-8: {source}") from e
    if source.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidConfig("config", f"JSON inválido: {e}") from e
        if not isinstance(data, dict):
            raise InvalidConfig("config", "esperado um objeto JSON")
    else:
        data = _parse_key_value(text)

    logger.info(f"Configuração do simulador carregada de {source}")
    return build_sim_config({**defaults, **data})


# Instância global de configurações
# Carregada automaticamente das variáveis de ambiente e do arquivo .env
settings = Settings()
