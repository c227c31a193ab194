"""
Módulo de configuración
"""
from .settings import *
