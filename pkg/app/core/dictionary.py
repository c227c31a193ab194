"""
Módulo del diccionario de términos y de la transformación ITR+
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Set, Tuple

from core.errors import ConflictingLabelsError, DanglingIdError
from core.graph_model import Edge, Hypergraph

logger = logging.getLogger(__name__)


class TermKind(Enum):
    NODE = 'node'
    EDGE_LABEL = 'edge_label'
    NODE_LABEL = 'node_label'


@dataclass
class Dictionary:
    """
    Correspondencia bidireccional texto <-> ID denso.

    Las etiquetas de arista y las etiquetas de nodo ITR+ comparten la lista
    edge_label_terms (ambas son etiquetas terminales), pero se internan en
    espacios separados para que "x" como predicado y "x" como etiqueta de
    nodo no colisionen. node_labels guarda las etiquetas de nodo del modo
    ITR sin +, una entrada por nodo.
    """
    node_terms: List[str] = field(default_factory=list)
    edge_label_terms: List[str] = field(default_factory=list)
    node_labels: Dict[int, str] = field(default_factory=dict)
    implicit_nodes: bool = False
    _index: Dict[TermKind, Dict[str, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._index = {kind: {} for kind in TermKind}
        for i, term in enumerate(self.node_terms):
            self._index[TermKind.NODE].setdefault(term, i)
        self.rebuild_label_index(set())

    def rebuild_label_index(self, node_label_ids: Set[int]) -> None:
        """Reconstruir los índices de etiquetas sabiendo qué IDs son etiquetas de nodo"""
        self._index[TermKind.EDGE_LABEL] = {}
        self._index[TermKind.NODE_LABEL] = {}
        for i, term in enumerate(self.edge_label_terms):
            kind = TermKind.NODE_LABEL if i in node_label_ids else TermKind.EDGE_LABEL
            self._index[kind].setdefault(term, i)

    def intern(self, term: str, kind: TermKind) -> int:
        """Devolver el ID del término, añadiéndolo si es nuevo"""
        index = self._index[kind]
        found = index.get(term)
        if found is not None:
            return found
        terms = self.node_terms if kind is TermKind.NODE else self.edge_label_terms
        new_id = len(terms)
        terms.append(term)
        index[term] = new_id
        return new_id

    def find(self, term: str, kind: TermKind) -> Optional[int]:
        """Buscar un término sin añadirlo"""
        if kind is TermKind.NODE and self.implicit_nodes:
            return int(term) if term.isascii() and term.isdigit() else None
        return self._index[kind].get(term)

    def lookup(self, term_id: int, kind: TermKind) -> str:
        """Texto del ID; los nodos implícitos se escriben como su número"""
        if kind is TermKind.NODE:
            if self.implicit_nodes:
                return str(term_id)
            terms = self.node_terms
        else:
            terms = self.edge_label_terms
        if term_id < 0 or term_id >= len(terms):
            raise DanglingIdError(f"El ID {term_id} ({kind.value}) no existe en el diccionario")
        return terms[term_id]

    @property
    def label_count(self) -> int:
        return len(self.edge_label_terms)

    def node_label_terms(self) -> List[str]:
        return list(self._index[TermKind.NODE_LABEL].keys())


def apply_itr_plus(graph: Hypergraph, node_labels: Mapping[int, str], dictionary: Dictionary) -> Hypergraph:
    """
    Materializar las etiquetas de nodo como aristas de rango 1

    Args:
        graph: Grafo original
        node_labels: Etiqueta de cada nodo etiquetado
        dictionary: Diccionario donde se internan las etiquetas (una entrada por etiqueta distinta)

    Returns:
        Nuevo Hypergraph con |E| + |V_etiquetados| aristas
    """
    edges = list(graph.edges)
    for node in sorted(node_labels):
        label_id = dictionary.intern(node_labels[node], TermKind.NODE_LABEL)
        edges.append(Edge(label_id, (node,)))
    node_count = max([graph.node_count] + [v + 1 for v in node_labels])
    return Hypergraph(node_count, edges)


def strip_itr_plus(graph: Hypergraph, dictionary: Dictionary) -> Tuple[Hypergraph, Dict[int, str]]:
    """
    Inversa de apply_itr_plus: separar las aristas de rango 1

    Returns:
        Tuple[grafo sin aristas de rango 1, etiqueta de cada nodo]
    """
    edges = []
    labels: Dict[int, str] = {}
    duplicates = 0
    for edge in graph.edges:
        if edge.rank != 1:
            edges.append(edge)
            continue
        node = edge.nodes[0]
        term = dictionary.lookup(edge.label, TermKind.NODE_LABEL)
        previous = labels.get(node)
        if previous is None:
            labels[node] = term
        elif previous == term:
            duplicates += 1
        else:
            raise ConflictingLabelsError(f"El nodo {node} tiene las etiquetas '{previous}' y '{term}'")
    if duplicates:
        logger.warning("Se ignoraron %d aristas de etiqueta duplicadas", duplicates)
    return Hypergraph(graph.node_count, edges), labels
