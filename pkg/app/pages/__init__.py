"""
Módulo de páginas de ITRFlow
"""
from . import page_01_compresion
from . import page_02_consultas
from . import page_03_estadisticas

__all__ = [
    'page_01_compresion',
    'page_02_consultas',
    'page_03_estadisticas',
]
