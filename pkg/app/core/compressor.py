"""
Flujo completo: grafo de entrada -> contenedor .itr -> grafo de salida
"""
import logging
import time
from typing import Dict, Optional, Tuple

from config import settings
from core.codec import CompressedGraph, deserialize, serialize
from core.dictionary import apply_itr_plus, strip_itr_plus
from core.errors import ItrError
from core.graph_loader import ParsedGraph
from core.graph_model import decompress
from core.repair import compress_graph

logger = logging.getLogger(__name__)


def compress_parsed(parsed: ParsedGraph,
                    itr_plus: bool = False,
                    max_rank: int = settings.DEFAULT_MAX_RANK,
                    k: int = settings.DEFAULT_K) -> Tuple[bytes, Dict]:
    """
    Comprimir un grafo parseado y serializarlo

    Args:
        parsed: Grafo, diccionario y etiquetas de nodo opcionales
        itr_plus: Materializar las etiquetas de nodo como aristas de rango 1
        max_rank: Rango máximo de los no terminales
        k: Aridad de los k²-trees

    Returns:
        Tuple[bytes del contenedor, estadísticas]
    """
    graph = parsed.graph
    dictionary = parsed.dictionary
    if parsed.node_labels:
        if itr_plus:
            graph = apply_itr_plus(graph, parsed.node_labels, dictionary)
        else:
            dictionary.node_labels = dict(parsed.node_labels)

    grammar, stats = compress_graph(graph, dictionary.label_count, max_rank)
    started = time.perf_counter()
    data = serialize(grammar, dictionary, itr_plus, k)
    stats['serialize_seconds'] = time.perf_counter() - started
    stats['bytes'] = len(data)
    stats['itr_plus'] = itr_plus
    stats['node_count'] = graph.node_count
    stats['terminal_labels'] = grammar.terminal_count
    return data, stats


def decompress_container(data: bytes) -> ParsedGraph:
    """
    Reconstruir el grafo original de un contenedor

    Returns:
        ParsedGraph con las etiquetas de nodo (de ITR+ o por nodo) si las hay
    """
    view = deserialize(data)
    graph = decompress(view.to_grammar())
    dictionary = view.dictionary
    if view.itr_plus:
        graph, labels = strip_itr_plus(graph, dictionary)
    else:
        labels = dict(dictionary.node_labels)
    logger.info("Contenedor descomprimido: %d aristas", len(graph.edges))
    return ParsedGraph(graph, dictionary, labels or None)


def load_container(data: bytes) -> Tuple[Optional[CompressedGraph], Optional[str]]:
    """
    Cargar un contenedor para la interfaz

    Returns:
        Tuple[vista, error]: la vista o None si hay error, mensaje de error o None
    """
    try:
        return deserialize(data), None
    except ItrError as e:
        return None, f"Contenedor inválido: {e}"


def compression_ratio(compressed_bytes: int, input_bytes: int) -> float:
    """Tamaño comprimido / tamaño de entrada, en porcentaje"""
    if input_bytes <= 0:
        raise ValueError("El tamaño de entrada debe ser positivo")
    return 100.0 * compressed_bytes / input_bytes
