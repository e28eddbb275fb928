"""
Simulation scenarios.

- normal: condições operacionais normais (congestion_factor = 1)
- congested: pacotes ampliados por congested_factor, gerando filas acumuladas
"""

import logging
from typing import Union

from app.core.exceptions import UnknownScenario
from app.models import Scenario
from app.schemas import SimConfig

logger = logging.getLogger(__name__)


def scenario(name: Union[str, Scenario], base: SimConfig) -> SimConfig:
    """
    Aplica um cenário à configuração base.

    Raises:
        UnknownScenario: Nome fora de {normal, congested}

    Example:
        >>> scenario("congested", load_sim_config()).congestion_factor
        12.0
    """
    try:
        chosen = Scenario(name)
    except ValueError:
        raise UnknownScenario(str(name)) from None

    factor = 1.0 if chosen is Scenario.NORMAL else base.congested_factor
    logger.info(f"Cenário {chosen.value}: fator de congestionamento {factor}")
    return base.model_copy(update={"congestion_factor": factor})
