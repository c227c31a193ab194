"""
Funciones estadísticas sobre contenedores y mediciones de consultas
"""
import pandas as pd

from core.codec import HEADER, CompressedGraph


def section_sizes(view: CompressedGraph) -> pd.DataFrame:
    """
    Tamaño de cada sección del contenedor

    Args:
        view: Contenedor deserializado

    Returns:
        DataFrame con bytes y porcentaje por sección (incluida la cabecera)
    """
    rows = [{'Sección': 'header', 'Bytes': HEADER.size}]
    rows += [{'Sección': name, 'Bytes': size} for name, size in view.section_sizes.items()]
    df = pd.DataFrame(rows)
    total = df['Bytes'].sum()
    df['%'] = (100 * df['Bytes'] / total).round(2) if total else 0.0
    return df


def start_graph_breakdown(view: CompressedGraph) -> pd.DataFrame:
    """Bits de cada estructura del grafo inicial"""
    sizes = view.start.size_in_bits()
    return pd.DataFrame({'Estructura': list(sizes), 'Bits': list(sizes.values())})


def container_summary(view: CompressedGraph) -> dict:
    """Resumen numérico de la gramática almacenada"""
    rule_edges = sum(len(rule.rhs.edges) for rule in view.rules)
    return {
        'nodes': view.node_count,
        'terminal_labels': view.terminal_count,
        'rules': len(view.rules),
        'rule_edges': rule_edges,
        'start_edges': len(view.start),
        'fn_table': len(view.start.fn_table),
        'max_rank': max((rule.rank for rule in view.rules), default=0),
        'itr_plus': view.itr_plus,
        'bytes': HEADER.size + sum(view.section_sizes.values()),
    }


def summarize_latencies(measurements: pd.DataFrame) -> pd.DataFrame:
    """
    Media y mediana de latencia por forma de patrón

    Args:
        measurements: DataFrame con columnas 'shape', 'seconds' y 'results'

    Returns:
        DataFrame indexado por forma con latencias en milisegundos
    """
    if measurements.empty:
        return pd.DataFrame(columns=['queries', 'mean_ms', 'median_ms', 'mean_results'])
    grouped = measurements.groupby('shape')
    summary = pd.DataFrame({
        'queries': grouped.size(),
        'mean_ms': grouped['seconds'].mean() * 1000,
        'median_ms': grouped['seconds'].median() * 1000,
        'mean_results': grouped['results'].mean(),
    })
    return summary.round(4)
