"""
Módulo para carga y escritura de grafos (N-Triples y listas de aristas)
"""
import csv
import io
import re
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd

from core.dictionary import Dictionary, TermKind
from core.errors import ParseError
from core.graph_model import Edge, Hypergraph

FORMAT_NTRIPLES = 'nt'
FORMAT_EDGELIST = 'el'

_IRI = r'<[^<>"{}|^`\\\s]*>'
_BLANK = r'_:[A-Za-z0-9_\-]+(?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-])?'
_LITERAL = r'"(?:[^"\\\n\r]|\\.)*"(?:\^\^' + _IRI + r'|@[A-Za-z]+(?:-[A-Za-z0-9]+)*)?'
_TERM = f'(?:{_IRI}|{_BLANK}|{_LITERAL})'
TRIPLE_PATTERN = re.compile(
    rf'^\s*({_IRI}|{_BLANK})\s*({_IRI})\s*({_TERM})\s*\.\s*(?:#.*)?$'
)

Source = Union[bytes, str, io.IOBase]


@dataclass(frozen=True)
class InputFormat:
    """Formato de entrada: 'nt' o 'el' (con fichero de etiquetas de nodo opcional)"""
    tag: str
    node_label_file: Optional[str] = None

    def __post_init__(self):
        if self.tag not in (FORMAT_NTRIPLES, FORMAT_EDGELIST):
            raise ValueError(f"Formato desconocido: {self.tag}")
        if self.node_label_file is not None and self.tag != FORMAT_EDGELIST:
            raise ValueError("El fichero de etiquetas de nodo solo se admite con listas de aristas")


@dataclass
class ParsedGraph:
    graph: Hypergraph
    dictionary: Dictionary
    node_labels: Optional[Dict[int, str]] = None


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, bytes):
        return source
    if isinstance(source, str):
        return source.encode('utf-8')
    data = source.read()
    return data.encode('utf-8') if isinstance(data, str) else data


def _parse_ntriples(data: bytes) -> ParsedGraph:
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise ParseError(f"Codificación inválida, se esperaba UTF-8: {e}") from None

    dictionary = Dictionary()
    edges = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        match = TRIPLE_PATTERN.match(line)
        if match is None:
            raise ParseError(f"Tripleta mal formada: {stripped[:80]}", line_no)
        s, p, o = match.groups()
        src = dictionary.intern(s, TermKind.NODE)
        label = dictionary.intern(p, TermKind.EDGE_LABEL)
        dst = dictionary.intern(o, TermKind.NODE)
        edges.append(Edge(label, (src, dst)))
    return ParsedGraph(Hypergraph(len(dictionary.node_terms), edges), dictionary)


def _read_tsv(data: bytes, names: list) -> pd.DataFrame:
    """Leer un fichero separado por tabuladores como columnas de texto"""
    if not data.strip():
        return pd.DataFrame(columns=names)
    try:
        df = pd.read_csv(
            io.BytesIO(data),
            sep='\t',
            header=None,
            names=names,
            index_col=False,
            dtype=str,
            quoting=csv.QUOTE_NONE,
            keep_default_na=False,
            skip_blank_lines=True,
            encoding='utf-8'
        )
    except pd.errors.ParserError as e:
        # pandas indica la línea en el mensaje ("Expected 3 fields in line 5, saw 4")
        found = re.search(r'line (\d+)', str(e))
        raise ParseError(str(e), int(found.group(1)) if found else None) from None
    except UnicodeDecodeError as e:
        raise ParseError(f"Codificación inválida, se esperaba UTF-8: {e}") from None

    missing = df.isna().any(axis=1) | (df == '').any(axis=1)
    if missing.any():
        raise ParseError(f"Se esperaban {len(names)} campos", int(np.flatnonzero(missing.values)[0]) + 1)
    return df


def _node_column(df: pd.DataFrame, column: str) -> np.ndarray:
    valid = df[column].str.fullmatch(r'\d+')
    if not valid.all():
        row = int(np.flatnonzero(~valid.values)[0])
        raise ParseError(f"Identificador de nodo no numérico: {df[column].iloc[row]!r}", row + 1)
    return df[column].astype(np.int64).to_numpy()


def _parse_edgelist(data: bytes, label_data: Optional[bytes]) -> ParsedGraph:
    dictionary = Dictionary(implicit_nodes=True)
    df = _read_tsv(data, ['src', 'label', 'dst'])
    src = _node_column(df, 'src')
    dst = _node_column(df, 'dst')
    codes, uniques = pd.factorize(df['label'], sort=False)
    for term in uniques:
        dictionary.intern(term, TermKind.EDGE_LABEL)
    edges = [Edge(label, (s, d)) for label, s, d in zip(codes.tolist(), src.tolist(), dst.tolist())]

    node_count = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
    node_labels = None
    if label_data is not None:
        labels_df = _read_tsv(label_data, ['node', 'label'])
        nodes = _node_column(labels_df, 'node')
        node_labels = {}
        for row, (node, term) in enumerate(zip(nodes.tolist(), labels_df['label'].tolist()), start=1):
            if node_labels.get(node, term) != term:
                raise ParseError(f"El nodo {node} tiene más de una etiqueta", row)
            node_labels[node] = term
        node_count = max(node_count, int(nodes.max(initial=-1)) + 1)
    return ParsedGraph(Hypergraph(node_count, edges), dictionary, node_labels)


def parse(source: Source, fmt: InputFormat, node_labels: Optional[Source] = None) -> ParsedGraph:
    """
    Convertir un grafo textual en Hypergraph + Dictionary

    Args:
        source: Contenido (bytes, str o fichero abierto)
        fmt: Formato de entrada
        node_labels: Contenido del fichero de etiquetas; si es None se usa fmt.node_label_file

    Returns:
        ParsedGraph con nodos en orden de primera aparición y una arista por línea
    """
    data = _read_bytes(source)
    if fmt.tag == FORMAT_NTRIPLES:
        return _parse_ntriples(data)

    label_data = None
    if node_labels is not None:
        label_data = _read_bytes(node_labels)
    elif fmt.node_label_file is not None:
        with open(fmt.node_label_file, 'rb') as f:
            label_data = f.read()
    return _parse_edgelist(data, label_data)


def load_graph(source: Source, fmt: InputFormat,
               node_labels: Optional[Source] = None) -> Tuple[Optional[ParsedGraph], Optional[str]]:
    """
    Cargar un grafo para la interfaz

    Returns:
        Tuple[ParsedGraph, error]: el grafo o None si hay error, mensaje de error o None
    """
    try:
        parsed = parse(source, fmt, node_labels)
    except ParseError as e:
        return None, f"Error al parsear el grafo: {e}"
    except ValueError as e:
        return None, str(e)
    except OSError as e:
        return None, f"Error de lectura: {e}"

    if len(parsed.graph) == 0:
        return None, "El grafo no contiene aristas"
    return parsed, None


def emit(graph: Hypergraph, dictionary: Dictionary, fmt: InputFormat) -> bytes:
    """
    Escribir un grafo de rango 2 en el formato indicado

    Returns:
        Contenido en UTF-8 (vacío si el grafo no tiene aristas)
    """
    sep, end = (' ', ' .\n') if fmt.tag == FORMAT_NTRIPLES else ('\t', '\n')
    lines = []
    for edge in graph.edges:
        if edge.rank != 2:
            raise ValueError(f"Solo se pueden escribir aristas de rango 2: {edge}")
        s = dictionary.lookup(edge.nodes[0], TermKind.NODE)
        p = dictionary.lookup(edge.label, TermKind.EDGE_LABEL)
        o = dictionary.lookup(edge.nodes[1], TermKind.NODE)
        lines.append(f"{s}{sep}{p}{sep}{o}{end}")
    return ''.join(lines).encode('utf-8')


def emit_node_labels(node_labels: Dict[int, str], dictionary: Dictionary) -> bytes:
    """Escribir el fichero node⇥label ordenado por nodo"""
    lines = [f"{dictionary.lookup(node, TermKind.NODE)}\t{node_labels[node]}\n" for node in sorted(node_labels)]
    return ''.join(lines).encode('utf-8')
