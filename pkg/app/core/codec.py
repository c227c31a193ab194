"""
Codificación sucinta de gramáticas y contenedor binario .itr
"""
import logging
import struct
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from config import settings
from core.bits import BitReader, BitWriter, delta_encode
from core.dictionary import Dictionary
from core.elias_fano import EliasFanoSeq
from core.errors import (
    BadMagicError,
    BadVersionError,
    CorruptionError,
    FormatError,
    GrammarError,
    SectionLengthError,
    TruncatedStreamError,
    UnknownNonterminalError,
)
from core.graph_model import Edge, Grammar, Hypergraph, LabelInfo, LabelKind, Rule, rule_dag
from core.k2tree import K2Tree

logger = logging.getLogger(__name__)

IndexFunction = Tuple[int, ...]

# magic + versión, flags y longitud de las cinco secciones
HEADER = struct.Struct("<4sB5Q")
SECTION_NAMES = ('dictionary', 'labels', 'rules', 'start_graph', 'nt_matrix')


# ----------------------------------------------------------------------
# Funciones índice
# ----------------------------------------------------------------------
def compute_index_function(edge: Edge) -> Tuple[List[int], IndexFunction]:
    """
    Separar una arista en sus nodos distintos y su función índice

    Returns:
        Tuple[ζ: nodos distintos ordenados, π: posición de cada e[m] en ζ]
    """
    zeta = sorted(set(edge.nodes))
    position = {v: i for i, v in enumerate(zeta)}
    return zeta, tuple(position[v] for v in edge.nodes)


def encode_index_function(pi: Sequence[int], writer: Optional[BitWriter] = None):
    """δ(rank-1) seguido de δ(π(m)) para cada m"""
    if not pi:
        raise ValueError("Una función índice tiene al menos una posición")
    own = writer is None
    writer = BitWriter() if writer is None else writer
    writer.write_delta(len(pi) - 1)
    writer.write_deltas(pi)
    return writer.bits if own else None


def decode_index_function(reader: BitReader) -> IndexFunction:
    rank = reader.read_delta() + 1
    return tuple(reader.read_deltas(rank))


# ----------------------------------------------------------------------
# Grafo inicial
# ----------------------------------------------------------------------
@dataclass
class CompressedStartGraph:
    """
    Grafo inicial en forma sucinta.

    Las aristas están ordenadas (de forma estable) por etiqueta; la columna
    j de la matriz de incidencia contiene los nodos distintos de la arista j.
    """
    node_count: int
    label_seq: EliasFanoSeq
    incidence: K2Tree
    fn_table: List[IndexFunction]
    fn_ids: np.ndarray

    def __len__(self) -> int:
        return len(self.label_seq)

    def _function(self, j: int) -> IndexFunction:
        fn_id = int(self.fn_ids[j])
        if fn_id >= len(self.fn_table):
            raise CorruptionError(f"La arista {j} usa la función índice {fn_id}, que no existe")
        return self.fn_table[fn_id]

    @staticmethod
    def _rebuild(j: int, label: int, zeta: Sequence[int], pi: IndexFunction) -> Edge:
        if len(zeta) != max(pi) + 1:
            raise CorruptionError(
                f"La columna {j} tiene {len(zeta)} nodos y la función índice espera {max(pi) + 1}"
            )
        return Edge(label, tuple(int(zeta[i]) for i in pi))

    def decode_edge(self, j: int) -> Edge:
        """Reconstruir la arista j a partir de su columna, su etiqueta y su función índice"""
        if not 0 <= j < len(self):
            raise IndexError(f"La arista {j} no existe")
        return self._rebuild(j, self.label_seq[j], self.incidence.col_ones(j), self._function(j))

    def iter_edges(self) -> Iterator[Edge]:
        """Decodificación en bloque con un único recorrido del k²-tree"""
        rows, cols = self.incidence.points()
        order = np.lexsort((rows, cols))
        rows, cols = rows[order], cols[order]
        bounds = np.searchsorted(cols, np.arange(len(self) + 1))
        for j, label in enumerate(self.label_seq):
            zeta = rows[bounds[j]:bounds[j + 1]]
            yield self._rebuild(j, label, zeta, self._function(j))

    def columns_with_label(self, label: int) -> range:
        start, end = self.label_seq.range_of_value(label)
        return range(start, end)

    def columns_with_node(self, node: int) -> List[int]:
        if not 0 <= node < self.node_count:
            return []
        return self.incidence.row_ones(node)

    def size_in_bits(self) -> Dict[str, int]:
        return {
            'labels': self.label_seq.size_in_bits(),
            'incidence': self.incidence.size_in_bits(),
            'fn_table': sum(len(encode_index_function(pi)) for pi in self.fn_table),
            'fn_ids': len(delta_encode(self.fn_ids.tolist())),
        }

    def write(self, writer: BitWriter) -> None:
        writer.write_delta(len(self))
        writer.write_delta(len(self.fn_table))
        for pi in self.fn_table:
            encode_index_function(pi, writer)
        self.label_seq.write(writer)
        self.incidence.write(writer)
        writer.write_deltas(self.fn_ids.tolist())

    @classmethod
    def read(cls, reader: BitReader, node_count: int) -> 'CompressedStartGraph':
        edge_count = reader.read_delta()
        table_size = reader.read_delta()
        fn_table = [decode_index_function(reader) for _ in range(table_size)]
        label_seq = EliasFanoSeq.read(reader)
        incidence = K2Tree.read(reader)
        fn_ids = np.array(reader.read_deltas(edge_count), dtype=np.int64)
        if len(label_seq) != edge_count or incidence.cols != edge_count or incidence.rows != node_count:
            raise CorruptionError("Las dimensiones del grafo inicial no son coherentes")
        return cls(node_count, label_seq, incidence, fn_table, fn_ids)


def encode_start_graph(graph: Hypergraph, label_count: int, k: int = settings.DEFAULT_K) -> CompressedStartGraph:
    """
    Codificar el grafo inicial

    Args:
        graph: Grafo inicial de la gramática
        label_count: Número total de etiquetas (universo de la secuencia de etiquetas)
        k: Aridad del k²-tree de incidencia
    """
    edges = sorted(graph.edges, key=lambda e: e.label)
    fn_index: Dict[IndexFunction, int] = {}
    fn_ids = np.zeros(len(edges), dtype=np.int64)
    rows, cols = [], []
    for j, edge in enumerate(edges):
        zeta, pi = compute_index_function(edge)
        fn_ids[j] = fn_index.setdefault(pi, len(fn_index))
        rows.extend(zeta)
        cols.extend([j] * len(zeta))
    incidence = K2Tree.from_arrays(np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
                                   graph.node_count, len(edges), k)
    label_seq = EliasFanoSeq.build([e.label for e in edges], label_count)
    return CompressedStartGraph(graph.node_count, label_seq, incidence, list(fn_index), fn_ids)


def decode_edge(start: CompressedStartGraph, j: int) -> Edge:
    return start.decode_edge(j)


# ----------------------------------------------------------------------
# Reglas
# ----------------------------------------------------------------------
def _check_rule_nodes(rule: Rule) -> int:
    nodes = {v for e in rule.rhs.edges for v in e.nodes}
    rank = len(nodes)
    if nodes != set(range(rank)) or rank != rule.rank:
        raise GrammarError(f"La regla {rule.head} tiene nodos internos o sin usar: {sorted(nodes)}")
    return rank


def encode_rules(rules: Sequence[Rule], terminal_count: int, writer: Optional[BitWriter] = None):
    """
    Serializar las reglas en orden de creación

    Por regla: δ(número de aristas) y, por arista, δ(etiqueta) y δ(nodo) por posición.
    El no terminal de cada regla queda implícito en su posición.
    """
    own = writer is None
    writer = BitWriter() if writer is None else writer
    for i, rule in enumerate(rules):
        if rule.head != terminal_count + i:
            raise GrammarError(f"La regla {i} debería definir el no terminal {terminal_count + i}, no {rule.head}")
        _check_rule_nodes(rule)
        writer.write_delta(len(rule.rhs.edges))
        for edge in rule.rhs.edges:
            writer.write_delta(edge.label)
            writer.write_deltas(edge.nodes)
    return writer.bits if own else None


def decode_rules(reader: BitReader, terminal_ranks: Sequence[int], rule_count: int) -> List[Rule]:
    """
    Leer rule_count reglas; el rango de cada no terminal se deduce de su regla

    Raises:
        UnknownNonterminalError: Si una regla usa una etiqueta aún no definida
    """
    ranks = list(terminal_ranks)
    terminals = len(ranks)
    rules = []
    for i in range(rule_count):
        head = terminals + i
        edges = []
        for _ in range(reader.read_delta()):
            label = reader.read_delta()
            if label >= head:
                raise UnknownNonterminalError(f"La regla {head} usa la etiqueta {label}, aún no definida")
            edges.append(Edge(label, tuple(reader.read_deltas(ranks[label]))))
        rank = 1 + max((v for e in edges for v in e.nodes), default=-1)
        if rank < 1:
            raise CorruptionError(f"La regla {head} está vacía")
        rule = Rule(head, Hypergraph(rank, edges))
        try:
            _check_rule_nodes(rule)
        except GrammarError as e:
            raise CorruptionError(str(e)) from None
        ranks.append(rank)
        rules.append(rule)
    return rules


# ----------------------------------------------------------------------
# Matriz NT
# ----------------------------------------------------------------------
def build_nt_matrix(grammar: Grammar, k: int = settings.DEFAULT_K) -> K2Tree:
    """
    Alcanzabilidad no terminal -> etiqueta terminal

    Returns:
        K2Tree con filas = no terminales (A - T) y columnas = etiquetas terminales
    """
    terminals = grammar.terminal_count
    dag = rule_dag(grammar)
    reach: Dict[int, Set[int]] = {}
    for head in reversed(list(nx.topological_sort(dag))):
        labels = set()
        for edge in grammar.rule_for(head).rhs.edges:
            if grammar.is_terminal(edge.label):
                labels.add(edge.label)
            else:
                labels |= reach[edge.label]
        reach[head] = labels
    points = [(head - terminals, label) for head, labels in reach.items() for label in labels]
    return K2Tree.build(points, len(grammar.rules), terminals, k)


# ----------------------------------------------------------------------
# Diccionario y tabla de etiquetas
# ----------------------------------------------------------------------
def _write_term(writer: BitWriter, term: str) -> None:
    data = term.encode('utf-8')
    writer.write_delta(len(data))
    writer.write_bytes(data)


def _read_term(reader: BitReader) -> str:
    try:
        return reader.read_bytes(reader.read_delta()).decode('utf-8')
    except UnicodeDecodeError as e:
        raise CorruptionError(f"Término del diccionario ilegible: {e}") from None


def write_dictionary(dictionary: Dictionary, writer: BitWriter) -> None:
    nodes = [] if dictionary.implicit_nodes else dictionary.node_terms
    writer.write_delta(len(nodes))
    for term in nodes:
        _write_term(writer, term)
    writer.write_delta(len(dictionary.edge_label_terms))
    for term in dictionary.edge_label_terms:
        _write_term(writer, term)
    # etiquetas de nodo sin ITR+: nodo como hueco respecto al anterior
    writer.write_delta(len(dictionary.node_labels))
    previous = 0
    for node in sorted(dictionary.node_labels):
        writer.write_delta(node - previous)
        _write_term(writer, dictionary.node_labels[node])
        previous = node


def read_dictionary(reader: BitReader, implicit_nodes: bool) -> Dictionary:
    node_terms = [_read_term(reader) for _ in range(reader.read_delta())]
    label_terms = [_read_term(reader) for _ in range(reader.read_delta())]
    node_labels = {}
    node = 0
    for _ in range(reader.read_delta()):
        node += reader.read_delta()
        node_labels[node] = _read_term(reader)
    return Dictionary(node_terms, label_terms, node_labels, implicit_nodes=implicit_nodes)


# ----------------------------------------------------------------------
# Contenedor
# ----------------------------------------------------------------------
@dataclass
class CompressedGraph:
    """Vista consultable de un contenedor deserializado (el grafo inicial no se materializa)"""
    flags: int
    dictionary: Dictionary
    labels: List[LabelInfo]
    rules: List[Rule]
    start: CompressedStartGraph
    nt_matrix: K2Tree
    section_sizes: Dict[str, int] = field(default_factory=dict)
    _grammar: Grammar = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._grammar = Grammar(self.labels, self.rules, Hypergraph(self.start.node_count, []))

    @property
    def itr_plus(self) -> bool:
        return bool(self.flags & settings.FLAG_ITR_PLUS)

    @property
    def node_count(self) -> int:
        return self.start.node_count

    @property
    def terminal_count(self) -> int:
        return len(self.labels) - len(self.rules)

    @property
    def grammar(self) -> Grammar:
        """Gramática con las reglas y un grafo inicial vacío (para expand_edge)"""
        return self._grammar

    def is_terminal(self, label: int) -> bool:
        return label < self.terminal_count

    def generates(self, label: int, terminal: int) -> bool:
        """NT[label][terminal] para un no terminal"""
        return bool(self.nt_matrix.cell(label - self.terminal_count, terminal))

    def decode_edge(self, j: int) -> Edge:
        return self.start.decode_edge(j)

    def to_grammar(self) -> Grammar:
        return Grammar(self.labels, self.rules, Hypergraph(self.node_count, list(self.start.iter_edges())))


def _label_table(grammar: Grammar, writer: BitWriter) -> None:
    terminals = grammar.terminal_count
    writer.write_delta(grammar.start_graph.node_count)
    writer.write_delta(terminals)
    writer.write_deltas(grammar.rank(label) - 1 for label in range(terminals))
    writer.write_delta(len(grammar.rules))


def serialize(grammar: Grammar, dictionary: Dictionary, itr_plus: bool = False,
              k: int = settings.DEFAULT_K) -> bytes:
    """
    Escribir el contenedor .itr

    Args:
        grammar: Gramática con no terminales en orden de creación
        dictionary: Diccionario de términos
        itr_plus: Marca de modo ITR+ (las aristas de rango 1 son etiquetas de nodo)
        k: Aridad de los k²-trees

    Returns:
        Bytes del contenedor: cabecera fija y cinco secciones alineadas a byte
    """
    flags = (settings.FLAG_ITR_PLUS if itr_plus else 0) | (settings.FLAG_IMPLICIT_NODES if dictionary.implicit_nodes else 0)
    terminals = grammar.terminal_count

    sections = []
    for build in (
        lambda w: write_dictionary(dictionary, w),
        lambda w: _label_table(grammar, w),
        lambda w: encode_rules(grammar.rules, terminals, w),
        lambda w: encode_start_graph(grammar.start_graph, len(grammar.labels), k).write(w),
        lambda w: build_nt_matrix(grammar, k).write(w),
    ):
        writer = BitWriter()
        build(writer)
        sections.append(writer.to_bytes())

    header = HEADER.pack(settings.CONTAINER_MAGIC + settings.CONTAINER_VERSION, flags, *map(len, sections))
    data = header + b''.join(sections)
    logger.info("Contenedor serializado: %d bytes (%s)", len(data),
                ", ".join(f"{n}={len(s)}" for n, s in zip(SECTION_NAMES, sections)))
    return data


def deserialize(data: bytes) -> CompressedGraph:
    """
    Leer un contenedor .itr

    Raises:
        BadMagicError, BadVersionError, TruncatedStreamError, SectionLengthError, CorruptionError
        (cualquier otro fallo al leer las secciones se informa como CorruptionError)
    """
    magic = settings.CONTAINER_MAGIC
    if data[:len(magic)] != magic:
        raise BadMagicError("El fichero no es un contenedor ITR")
    if data[len(magic):len(magic) + 1] != settings.CONTAINER_VERSION:
        raise BadVersionError(f"Versión de contenedor no soportada: {data[len(magic):len(magic) + 1]!r}")
    if len(data) < HEADER.size:
        raise TruncatedStreamError(f"Cabecera truncada: {len(data)} de {HEADER.size} bytes")

    _, flags, *lengths = HEADER.unpack_from(data)
    if sum(lengths) != len(data) - HEADER.size:
        raise SectionLengthError(
            f"Las secciones declaran {sum(lengths)} bytes y el fichero tiene {len(data) - HEADER.size}"
        )
    chunks = []
    offset = HEADER.size
    for length in lengths:
        chunks.append(data[offset:offset + length])
        offset += length

    try:
        return _read_sections(flags, chunks, lengths)
    except (FormatError, GrammarError):
        raise
    except (ValueError, IndexError, KeyError, OverflowError) as e:
        raise CorruptionError(f"Contenedor corrupto: {e}") from None


def _read_sections(flags: int, chunks: List[bytes], lengths: List[int]) -> CompressedGraph:
    dictionary = read_dictionary(BitReader(chunks[0]), bool(flags & settings.FLAG_IMPLICIT_NODES))

    reader = BitReader(chunks[1])
    node_count = reader.read_delta()
    terminals = reader.read_delta()
    terminal_ranks = [r + 1 for r in reader.read_deltas(terminals)]
    rule_count = reader.read_delta()

    rules = decode_rules(BitReader(chunks[2]), terminal_ranks, rule_count)
    labels = [LabelInfo(i, r, LabelKind.TERMINAL) for i, r in enumerate(terminal_ranks)]
    labels += [LabelInfo(rule.head, rule.rank, LabelKind.NONTERMINAL) for rule in rules]

    start = CompressedStartGraph.read(BitReader(chunks[3]), node_count)
    nt_matrix = K2Tree.read(BitReader(chunks[4]))
    if nt_matrix.rows != rule_count or nt_matrix.cols != terminals:
        raise CorruptionError("La matriz NT no coincide con la tabla de etiquetas")

    if flags & settings.FLAG_ITR_PLUS:
        dictionary.rebuild_label_index({i for i, r in enumerate(terminal_ranks) if r == 1})
    return CompressedGraph(flags, dictionary, labels, rules, start, nt_matrix,
                           dict(zip(SECTION_NAMES, lengths)))
