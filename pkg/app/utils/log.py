"""
Configuración del logging a partir de ITR_LOG
"""
import logging
import os
from typing import Optional

from config import settings


def configure_logging(level_name: Optional[str] = None) -> Optional[int]:
    """
    Configurar el logger raíz en la salida de error

    Args:
        level_name: 'off', 'info' o 'debug'; si es None se lee ITR_LOG

    Returns:
        Nivel aplicado, o None si el logging queda desactivado
    """
    if level_name is None:
        level_name = os.environ.get(settings.LOG_ENV_VAR, 'off')
    level_name = level_name.strip().lower()
    if level_name not in settings.LOG_LEVELS:
        raise ValueError(f"{settings.LOG_ENV_VAR} debe ser uno de {list(settings.LOG_LEVELS)}: {level_name}")

    level = settings.LOG_LEVELS[level_name]
    root = logging.getLogger()
    if level is None:
        # sin handlers el último recurso escribiría los warnings en stderr
        if not root.handlers:
            root.addHandler(logging.NullHandler())
        return None
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, force=True)
    return logging.getLevelName(level)
