"""
Módulo de estilos
"""
from .custom_css import CUSTOM_CSS, apply_custom_styles
