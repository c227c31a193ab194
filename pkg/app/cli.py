"""
ITRFlow - interfaz de línea de comandos

Uso:
    python app/cli.py compress -i grafo.nt -f nt -o grafo.itr [--plus]
    python app/cli.py query -i grafo.itr -q "<s> ? ?"
"""
import argparse
import logging
import random
import re
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from config import settings
from core.codec import CompressedGraph, deserialize
from core.compressor import compress_parsed, compression_ratio, decompress_container
from core.dictionary import Dictionary, TermKind
from core.errors import FormatError, GrammarError, ItrError, ModeError, ParseError
from core.graph_loader import FORMAT_EDGELIST, FORMAT_NTRIPLES, InputFormat, emit, emit_node_labels, parse
from core.graph_model import Edge, Hypergraph
from core.query import TriplePattern, answer
from utils.log import configure_logging
from utils.stats import container_summary, section_sizes, start_graph_breakdown, summarize_latencies

logger = logging.getLogger(__name__)

# Literal entre comillas (con sufijo de tipo o idioma) o cualquier secuencia sin espacios
_QUERY_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"\S*|\S+')


class UsageError(ItrError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='itrflow', description='Compresión de grafos etiquetados con gramáticas')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('compress', help='Comprimir un grafo en un contenedor .itr')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-f', '--format', choices=list(settings.AVAILABLE_FORMATS), default=settings.DEFAULT_FORMAT)
    p.add_argument('-o', '--output', required=True)
    p.add_argument('--plus', action='store_true', help='Etiquetas de nodo como aristas de rango 1 (ITR+)')
    p.add_argument('--node-labels', help='Fichero nodo⇥etiqueta (solo listas de aristas)')
    p.add_argument('--max-rank', type=int, default=settings.DEFAULT_MAX_RANK)
    p.add_argument('--k', type=int, default=settings.DEFAULT_K)

    p = sub.add_parser('decompress', help='Reconstruir el grafo original')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-o', '--output', required=True)
    p.add_argument('-f', '--format', choices=list(settings.AVAILABLE_FORMATS),
                   help='Por defecto, el formato del grafo comprimido')
    p.add_argument('--node-labels', help='Escribir aquí las etiquetas de nodo, si las hay')

    p = sub.add_parser('query', help='Consultar un patrón de tripleta')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-q', '--query', required=True, help='Tres términos; ? es variable, #N es un ID interno')

    p = sub.add_parser('stats', help='Tamaños de sección y resumen de la gramática')
    p.add_argument('-i', '--input', required=True)

    p = sub.add_parser('bench', help='Medir la latencia de consultas')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-Q', '--queries', help='Fichero con un patrón por línea')
    p.add_argument('-n', '--repeat', type=int, default=settings.DEFAULT_BENCH_REPEAT)
    p.add_argument('--random', type=int, default=0, help='Generar N consultas (S,?,?) con nodos al azar')
    p.add_argument('--seed', type=int, default=0)
    return parser


def tokenize_query(text: str) -> List[str]:
    tokens = _QUERY_TOKEN.findall(text)
    if len(tokens) != 3:
        raise ParseError(f"Se esperaban tres términos y hay {len(tokens)}: {text!r}")
    return tokens


def _resolve(token: str, dictionary: Dictionary, kind: TermKind):
    """None = variable; -1 = término desconocido; si no, el ID"""
    if token == '?':
        return None
    if re.fullmatch(r'#[0-9]+', token):
        return int(token[1:])
    found = dictionary.find(token, kind)
    return -1 if found is None else found


def parse_pattern(text: str, dictionary: Dictionary) -> Optional[TriplePattern]:
    """
    Traducir una consulta textual a IDs

    Returns:
        TriplePattern, o None si algún término no está en el diccionario
    """
    s, p, o = tokenize_query(text)
    ids = (_resolve(s, dictionary, TermKind.NODE),
           _resolve(p, dictionary, TermKind.EDGE_LABEL),
           _resolve(o, dictionary, TermKind.NODE))
    if -1 in ids:
        return None
    return TriplePattern(*ids)


def _output_format(dictionary: Dictionary) -> InputFormat:
    return InputFormat(FORMAT_EDGELIST if dictionary.implicit_nodes else FORMAT_NTRIPLES)


def format_edges(view: CompressedGraph, edges: Sequence[Edge]) -> str:
    data = emit(Hypergraph(view.node_count, list(edges)), view.dictionary, _output_format(view.dictionary))
    return data.decode('utf-8')


def run_query(view: CompressedGraph, text: str) -> List[Edge]:
    pattern = parse_pattern(text, view.dictionary)
    if pattern is None:
        return []
    return list(answer(view, pattern))


def _compress(args) -> int:
    started = time.perf_counter()
    if args.max_rank < 2 or args.k < 2:
        raise UsageError("--max-rank y --k deben ser al menos 2")
    try:
        fmt = InputFormat(args.format, args.node_labels)
    except ValueError as e:
        raise UsageError(str(e)) from None
    source = Path(args.input).read_bytes()
    parsed = parse(source, fmt)
    data, stats = compress_parsed(parsed, itr_plus=args.plus, max_rank=args.max_rank, k=args.k)
    Path(args.output).write_bytes(data)
    stats['total_seconds'] = time.perf_counter() - started

    print(f"rules: {stats['rules']}")
    print(f"edges before: {stats['edges_before']}")
    print(f"edges after: {stats['edges_after']}")
    print(f"size before: {stats['size_before']}")
    print(f"size after: {stats['size_after']}")
    print(f"bytes: {stats['bytes']}")
    if source:
        print(f"ratio: {compression_ratio(stats['bytes'], len(source)):.2f}%")
    print(f"seconds: {stats['total_seconds']:.3f}")
    return settings.EXIT_OK


def _decompress(args) -> int:
    parsed = decompress_container(Path(args.input).read_bytes())
    fmt = InputFormat(args.format) if args.format else _output_format(parsed.dictionary)
    Path(args.output).write_bytes(emit(parsed.graph, parsed.dictionary, fmt))
    if args.node_labels and parsed.node_labels:
        Path(args.node_labels).write_bytes(emit_node_labels(parsed.node_labels, parsed.dictionary))
    return settings.EXIT_OK


def _query(args) -> int:
    view = deserialize(Path(args.input).read_bytes())
    sys.stdout.write(format_edges(view, run_query(view, args.query)))
    return settings.EXIT_OK


def _stats(args) -> int:
    view = deserialize(Path(args.input).read_bytes())
    print(section_sizes(view).to_string(index=False))
    print()
    print(start_graph_breakdown(view).to_string(index=False))
    print()
    for key, value in container_summary(view).items():
        print(f"{key}: {value}")
    return settings.EXIT_OK


def benchmark(view: CompressedGraph, queries: Sequence[str], repeat: int) -> pd.DataFrame:
    """
    Ejecutar cada consulta repeat veces

    Returns:
        DataFrame con una fila por ejecución (query, shape, seconds, results)
    """
    rows = []
    for text in queries:
        pattern = parse_pattern(text, view.dictionary)
        shape = pattern.shape if pattern is not None else 'unknown'
        for _ in range(repeat):
            started = time.perf_counter()
            results = sum(1 for _ in answer(view, pattern)) if pattern is not None else 0
            rows.append({'query': text, 'shape': shape,
                         'seconds': time.perf_counter() - started, 'results': results})
    return pd.DataFrame(rows, columns=['query', 'shape', 'seconds', 'results'])


def random_subject_queries(view: CompressedGraph, count: int, seed: int = 0) -> List[str]:
    rng = random.Random(seed)
    if not view.node_count:
        return []
    return [f"#{rng.randrange(view.node_count)} ? ?" for _ in range(count)]


def _bench(args) -> int:
    if args.repeat < 1:
        raise UsageError("-n debe ser positivo")
    view = deserialize(Path(args.input).read_bytes())
    queries = []
    if args.queries:
        lines = Path(args.queries).read_text(encoding='utf-8').splitlines()
        queries = [line.strip() for line in lines if line.strip() and not line.startswith('#')]
    if args.random:
        queries += random_subject_queries(view, args.random, args.seed)
    if not queries:
        raise UsageError("No hay consultas: usa -Q o --random")
    summary = summarize_latencies(benchmark(view, queries, args.repeat))
    print(summary.to_string())
    return settings.EXIT_OK


COMMANDS = {
    'compress': _compress,
    'decompress': _decompress,
    'query': _query,
    'stats': _stats,
    'bench': _bench,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ejecutar un comando

    Returns:
        Código de salida: 0 bien, 1 uso, 2 E/S, 3 formato o corrupción
    """
    try:
        configure_logging()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return settings.EXIT_USAGE

    args = None
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ModeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return settings.EXIT_USAGE
    except ParseError as e:
        # consulta mal escrita = uso; fichero de entrada mal formado = formato
        code = settings.EXIT_USAGE if getattr(args, 'command', None) in ('query', 'bench') else settings.EXIT_FORMAT
        print(f"error: {e}", file=sys.stderr)
        return code
    except OSError as e:
        print(f"error de E/S: {e}", file=sys.stderr)
        return settings.EXIT_IO
    except (FormatError, GrammarError, ItrError, ValueError, IndexError) as e:
        print(f"error de formato: {e}", file=sys.stderr)
        return settings.EXIT_FORMAT


if __name__ == '__main__':
    sys.exit(run())
