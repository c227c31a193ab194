"""
Consultas de tripletas y de vecindad sobre la forma comprimida
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from core.codec import CompressedGraph
from core.dictionary import TermKind
from core.errors import ConflictingLabelsError, MalformedPatternError, ModeError
from core.graph_model import Edge, expand_edge

DIRECTIONS = ('out', 'in', 'both')


@dataclass(frozen=True)
class TriplePattern:
    """Patrón (s, p, o); None significa variable libre"""
    s: Optional[int] = None
    p: Optional[int] = None
    o: Optional[int] = None

    def __post_init__(self):
        for name in ('s', 'p', 'o'):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
                raise MalformedPatternError(f"El componente {name} debe ser un ID natural o None: {value!r}")

    @property
    def shape(self) -> str:
        """Forma del patrón, p. ej. 'S?O'"""
        return ''.join(c if v is not None else '?' for c, v in zip('SPO', (self.s, self.p, self.o)))

    def matches(self, edge: Edge) -> bool:
        return (edge.rank == 2
                and (self.s is None or edge.nodes[0] == self.s)
                and (self.p is None or edge.label == self.p)
                and (self.o is None or edge.nodes[1] == self.o))


@dataclass
class QueryStats:
    """Contadores de trabajo de una consulta"""
    seeded: int = 0
    expanded: int = 0
    filtered: int = 0
    emitted: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {'seeded': self.seeded, 'expanded': self.expanded,
                'filtered': self.filtered, 'emitted': self.emitted}


def _seed_columns(view: CompressedGraph, q: TriplePattern) -> List[int]:
    start = view.start
    if q.s is not None or q.o is not None:
        return start.columns_with_node(q.s if q.s is not None else q.o)
    if q.p is not None:
        if q.p >= view.terminal_count:
            return []
        columns = list(start.columns_with_label(q.p))
        for head in view.nt_matrix.col_ones(q.p):
            columns.extend(start.columns_with_label(view.terminal_count + head))
        return sorted(columns)
    return list(range(len(start)))


def _should_expand(view: CompressedGraph, q: TriplePattern, edge: Edge) -> bool:
    if q.s is not None and q.s not in edge.nodes:
        return False
    if q.o is not None and q.o not in edge.nodes:
        return False
    if q.p is not None and (q.p >= view.terminal_count or not view.generates(edge.label, q.p)):
        return False
    return True


def answer(view: CompressedGraph, q: TriplePattern, stats: Optional[QueryStats] = None) -> Iterator[Edge]:
    """
    Aristas terminales de rango 2 que encajan con el patrón

    Args:
        view: Contenedor deserializado
        q: Patrón de tripleta con IDs internos
        stats: Contadores opcionales

    Returns:
        Generador en orden de columna del grafo inicial y en profundidad dentro de cada expansión
    """
    stats = stats if stats is not None else QueryStats()
    grammar = view.grammar
    for column in _seed_columns(view, q):
        stats.seeded += 1
        worklist = [view.decode_edge(column)]
        while worklist:
            edge = worklist.pop()
            if view.is_terminal(edge.label):
                if q.matches(edge):
                    stats.emitted += 1
                    yield edge
                continue
            if not _should_expand(view, q, edge):
                stats.filtered += 1
                continue
            stats.expanded += 1
            worklist.extend(reversed(expand_edge(grammar, edge)))


def neighborhood(view: CompressedGraph, node: int, direction: str = 'both',
                 stats: Optional[QueryStats] = None) -> Iterator[Edge]:
    """
    Aristas salientes, entrantes o ambas de un nodo

    'both' concatena las salientes y las entrantes; un bucle aparece en las dos.
    """
    if direction not in DIRECTIONS:
        raise MalformedPatternError(f"Dirección desconocida: {direction}")
    if direction in ('out', 'both'):
        yield from answer(view, TriplePattern(s=node), stats)
    if direction in ('in', 'both'):
        yield from answer(view, TriplePattern(o=node), stats)


def _label_edges(view: CompressedGraph, node: int) -> Iterator[Edge]:
    grammar = view.grammar
    for column in view.start.columns_with_node(node):
        worklist = [view.decode_edge(column)]
        while worklist:
            edge = worklist.pop()
            if node not in edge.nodes:
                continue
            if view.is_terminal(edge.label):
                if edge.rank == 1:
                    yield edge
                continue
            worklist.extend(reversed(expand_edge(grammar, edge)))


def node_label(view: CompressedGraph, node: int) -> Optional[str]:
    """
    Etiqueta de un nodo en un contenedor ITR+

    Returns:
        Texto de la etiqueta o None si el nodo no tiene
    """
    if not view.itr_plus:
        raise ModeError("El contenedor no está en modo ITR+")
    found = None
    for edge in _label_edges(view, node):
        term = view.dictionary.lookup(edge.label, TermKind.NODE_LABEL)
        if found is not None and found != term:
            raise ConflictingLabelsError(f"El nodo {node} tiene las etiquetas '{found}' y '{term}'")
        found = term
    return found


@dataclass
class NaiveIndex:
    """Recorrido lineal del grafo descomprimido (referencia para comparar resultados)"""
    edges: List[Edge] = field(default_factory=list)

    def answer(self, q: TriplePattern) -> List[Edge]:
        return [e for e in self.edges if q.matches(e)]
