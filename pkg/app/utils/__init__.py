"""
Módulo de utilidades
"""
from .stats import (
    section_sizes,
    start_graph_breakdown,
    container_summary,
    summarize_latencies
)
from .log import configure_logging
