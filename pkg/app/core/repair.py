"""
Módulo RePair sobre hipergrafos: reemplazo de dígramas y poda de reglas
"""
import heapq
import logging
import time
from collections import Counter, defaultdict, deque
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from config import settings
from core.digrams import (
    Digram,
    EmptyCountsError,
    count_digrams,
    count_incidence,
    update_counts,
)
from core.errors import RankMismatchError
from core.graph_model import (
    Edge,
    Grammar,
    Hypergraph,
    LabelInfo,
    LabelKind,
    Rule,
    edges_size,
    expand_edge,
    grammar_size,
    terminal_grammar,
)

logger = logging.getLogger(__name__)


def size_gain(digram: Digram, n: int, grammar: Grammar) -> int:
    """
    Reducción de tamaño al reemplazar n ocurrencias

    Cada reemplazo ahorra 2 unidades; la regla nueva cuesta (1+rank(a1)) + (1+rank(a2)).
    """
    r1 = grammar.rank(digram.first.label)
    r2 = grammar.rank(digram.second.label)
    return 2 * n - (2 + r1 + r2)


def merged_edge(e1: Edge, e2: Edge, digram: Digram, label: int) -> Edge:
    """Arista A(v, resto(e1), resto(e2)) con v el nodo compartido"""
    m1, m2 = digram.first.conn_type, digram.second.conn_type
    rest1 = tuple(v for m, v in enumerate(e1.nodes) if m != m1)
    rest2 = tuple(v for m, v in enumerate(e2.nodes) if m != m2)
    return Edge(label, (e1.nodes[m1],) + rest1 + rest2)


def digram_rule(digram: Digram, head: int, r1: int, r2: int) -> Rule:
    """Regla del dígrama: nodo 0 compartido, luego los nodos restantes de e1 y de e2"""
    m1, m2 = digram.first.conn_type, digram.second.conn_type
    nodes1, nxt = [], 1
    for m in range(r1):
        if m == m1:
            nodes1.append(0)
        else:
            nodes1.append(nxt)
            nxt += 1
    nodes2 = []
    for m in range(r2):
        if m == m2:
            nodes2.append(0)
        else:
            nodes2.append(nxt)
            nxt += 1
    rhs = Hypergraph(r1 + r2 - 1, [
        Edge(digram.first.label, tuple(nodes1)),
        Edge(digram.second.label, tuple(nodes2)),
    ])
    return Rule(head, rhs)


class EdgeStore:
    """
    Lista de aristas de trabajo con huecos (None) e índice por etiqueta.

    Los índices de by_label pueden quedar obsoletos; se comprueba la
    etiqueta actual al recorrerlos.
    """

    def __init__(self, edges: Iterable[Edge]):
        self.edges: List[Optional[Edge]] = list(edges)
        self.by_label: Dict[int, List[int]] = defaultdict(list)
        for idx, edge in enumerate(self.edges):
            self.by_label[edge.label].append(idx)

    def scan(self, labels: Set[int]) -> Iterator[Tuple[int, int]]:
        """Posiciones (en orden) de las aristas vivas con alguna de las etiquetas"""
        streams = [((idx, label) for idx in self.by_label.get(label, ())) for label in sorted(labels)]
        for idx, label in heapq.merge(*streams):
            edge = self.edges[idx]
            if edge is not None and edge.label == label:
                yield idx, label

    def find_occurrences(self, digram: Digram) -> List[Tuple[int, int]]:
        """
        Recorrido de izquierda a derecha con punteros pendientes por nodo

        Returns:
            Pares (posición de e1, posición de e2) disjuntos
        """
        (a1, m1), (a2, m2) = digram
        same = digram.first == digram.second
        pending1: Dict[int, deque] = defaultdict(deque)
        pending2: Dict[int, deque] = defaultdict(deque)
        used: Set[int] = set()
        found = []

        def take(pending: Dict[int, deque], node: int) -> Optional[int]:
            queue = pending.get(node)
            while queue:
                idx = queue.popleft()
                if idx not in used:
                    return idx
            return None

        for idx, label in self.scan({a1, a2}):
            edge = self.edges[idx]
            v1 = edge.nodes[m1] if label == a1 else None
            v2 = edge.nodes[m2] if label == a2 else None
            if same:
                partner = take(pending1, v1)
                if partner is None:
                    pending1[v1].append(idx)
                else:
                    found.append((partner, idx))
                    used.update((partner, idx))
                continue
            if v1 is not None:
                partner = take(pending2, v1)
                if partner is not None:
                    found.append((idx, partner))
                    used.update((partner, idx))
                    continue
            if v2 is not None:
                partner = take(pending1, v2)
                if partner is not None:
                    found.append((partner, idx))
                    used.update((partner, idx))
                    continue
            if v1 is not None:
                pending1[v1].append(idx)
            if v2 is not None:
                pending2[v2].append(idx)
        return found

    def apply(self, occurrences: List[Tuple[int, int]], digram: Digram, label: int,
              table=None, counts=None) -> None:
        """Sustituir cada ocurrencia por una arista nueva en la posición de la primera"""
        for i1, i2 in occurrences:
            e1, e2 = self.edges[i1], self.edges[i2]
            new = merged_edge(e1, e2, digram, label)
            first, second = min(i1, i2), max(i1, i2)
            self.edges[first] = new
            self.edges[second] = None
            self.by_label[label].append(first)
            if table is not None:
                update_counts(table, counts, e1)
                update_counts(table, counts, e2, new)
        self.by_label[label].sort()
        for old in {digram.first.label, digram.second.label}:
            self.by_label[old] = [i for i in self.by_label[old]
                                  if self.edges[i] is not None and self.edges[i].label == old]

    def compact(self) -> List[Edge]:
        return [e for e in self.edges if e is not None]


def replace_occurrences(graph: Hypergraph, digram: Digram, new_label: LabelInfo, grammar: Grammar) -> int:
    """
    Reemplazar en graph todas las ocurrencias encontradas del dígrama

    Args:
        graph: Grafo que se modifica en sitio
        digram: Dígrama canónico
        new_label: No terminal nuevo de rango rank(a1) + rank(a2) - 1
        grammar: Gramática que define los rangos de las etiquetas del dígrama

    Returns:
        Número de aristas nuevas
    """
    expected = grammar.rank(digram.first.label) + grammar.rank(digram.second.label) - 1
    if new_label.rank != expected:
        raise RankMismatchError(f"El no terminal {new_label.id} debe tener rango {expected}, no {new_label.rank}")
    store = EdgeStore(graph.edges)
    occurrences = store.find_occurrences(digram)
    store.apply(occurrences, digram, new_label.id)
    graph.edges[:] = store.compact()
    return len(occurrences)


def replace_digrams(grammar: Grammar,
                    max_rank: int = settings.DEFAULT_MAX_RANK,
                    max_iterations: Optional[int] = None,
                    ignore_gain: bool = False,
                    stats: Optional[Dict] = None) -> Grammar:
    """
    Bucle RePair: reemplazar el dígrama más frecuente mientras reduzca el tamaño

    Args:
        grammar: Gramática de partida (normalmente sin reglas)
        max_rank: Rango máximo de los no terminales creados
        max_iterations: Límite de iteraciones (None = sin límite)
        ignore_gain: Reemplazar aunque no haya ganancia (pasos forzados)
        stats: Diccionario que se rellena con estadísticas del bucle

    Returns:
        Nueva Grammar con las reglas añadidas en orden de creación
    """
    labels = list(grammar.labels)
    rules = list(grammar.rules)
    store = EdgeStore(grammar.start_graph.edges)
    table = count_incidence(grammar.start_graph)
    counts = count_digrams(table)
    working = Grammar(labels, rules, grammar.start_graph)

    def accept(digram: Digram) -> bool:
        return labels[digram.first.label].rank + labels[digram.second.label].rank - 1 <= max_rank

    size = grammar_size(grammar)
    sizes = [size]
    replaced = []
    skipped = 0
    while max_iterations is None or len(replaced) < max_iterations:
        try:
            digram, estimate = counts.most_frequent(accept)
        except EmptyCountsError:
            break
        if not ignore_gain and size_gain(digram, estimate, working) <= 0:
            break
        occurrences = store.find_occurrences(digram)
        counts.retire(digram)
        gain = size_gain(digram, len(occurrences), working)
        if not occurrences or (not ignore_gain and gain <= 0):
            # el conteo es una cota superior; la pasada real no compensa
            skipped += 1
            continue

        r1, r2 = labels[digram.first.label].rank, labels[digram.second.label].rank
        head = len(labels)
        labels.append(LabelInfo(head, r1 + r2 - 1, LabelKind.NONTERMINAL))
        rules.append(digram_rule(digram, head, r1, r2))
        working = Grammar(labels, rules, grammar.start_graph)
        store.apply(occurrences, digram, head, table, counts)

        size -= gain
        sizes.append(size)
        replaced.append(len(occurrences))
        logger.debug("Iteración %d: %s -> %d (%d ocurrencias, estimado %d, tamaño %d)",
                     len(replaced), digram, head, len(occurrences), estimate, size)

    result = Grammar(labels, rules, Hypergraph(grammar.start_graph.node_count, store.compact()))
    if stats is not None:
        stats['iterations'] = len(replaced)
        stats['occurrences'] = replaced
        stats['skipped_digrams'] = skipped
        stats['sizes'] = sizes
    return result


def _select_inlined(grammar: Grammar) -> Set[int]:
    """
    Decidir qué reglas se expanden, de la más reciente a la más antigua

    Una regla se expande si se usa como mucho una vez o si expandirla no
    aumenta el tamaño: u·s_A < u·(1 + rank) + s_A.
    """
    usage = Counter(e.label for e in grammar.start_graph.edges if not grammar.is_terminal(e.label))
    inline: Set[int] = set()
    for rule in reversed(grammar.rules):
        head = rule.head
        uses = usage[head]
        rhs_size = edges_size(rule.rhs.edges)
        if uses <= 1 or uses * rhs_size < uses * (1 + rule.rank) + rhs_size:
            inline.add(head)
        weight = uses if head in inline else 1
        for edge in rule.rhs.edges:
            if not grammar.is_terminal(edge.label):
                usage[edge.label] += weight
    return inline


def _expand_inlined(grammar: Grammar, edges: Iterable[Edge], inline: Set[int]) -> List[Edge]:
    out = []
    for root in edges:
        stack = [root]
        while stack:
            edge = stack.pop()
            if edge.label in inline:
                stack.extend(reversed(expand_edge(grammar, edge)))
            else:
                out.append(edge)
    return out


def prune(grammar: Grammar) -> Grammar:
    """
    Expandir las reglas que no compensan y renumerar los no terminales

    Returns:
        Gramática equivalente con los no terminales en orden de creación
    """
    while True:
        inline = _select_inlined(grammar)
        if not inline:
            return grammar
        logger.debug("Poda: se expanden %d reglas", len(inline))

        terminals = grammar.terminal_count
        kept = [rule for rule in grammar.rules if rule.head not in inline]
        remap = {rule.head: terminals + i for i, rule in enumerate(kept)}

        def relabel(edges: List[Edge]) -> List[Edge]:
            return [Edge(remap.get(e.label, e.label), e.nodes) for e in edges]

        labels = list(grammar.labels[:terminals])
        rules = []
        for rule in kept:
            new_head = remap[rule.head]
            labels.append(LabelInfo(new_head, rule.rank, LabelKind.NONTERMINAL))
            rhs = relabel(_expand_inlined(grammar, rule.rhs.edges, inline))
            rules.append(Rule(new_head, Hypergraph(rule.rank, rhs)))
        start = relabel(_expand_inlined(grammar, grammar.start_graph.edges, inline))
        grammar = Grammar(labels, rules, Hypergraph(grammar.start_graph.node_count, start))


def compress_graph(graph: Hypergraph, label_count: int,
                   max_rank: int = settings.DEFAULT_MAX_RANK,
                   do_prune: bool = True) -> Tuple[Grammar, Dict]:
    """
    Comprimir un grafo terminal: RePair + poda

    Args:
        graph: Grafo con etiquetas terminales 0..label_count-1
        label_count: Número de etiquetas terminales
        max_rank: Rango máximo de los no terminales
        do_prune: Aplicar la poda final

    Returns:
        Tuple[gramática, estadísticas]
    """
    started = time.perf_counter()
    grammar = terminal_grammar(graph, label_count)
    stats: Dict = {
        'edges_before': len(graph.edges),
        'size_before': grammar_size(grammar),
    }
    grammar = replace_digrams(grammar, max_rank=max_rank, stats=stats)
    stats['rules_before_prune'] = len(grammar.rules)
    if do_prune:
        grammar = prune(grammar)
    stats['rules'] = len(grammar.rules)
    stats['edges_after'] = len(grammar.start_graph.edges)
    stats['size_after'] = grammar_size(grammar)
    stats['seconds'] = time.perf_counter() - started
    logger.info("Compresión: %d aristas -> %d aristas y %d reglas en %.2fs",
                stats['edges_before'], stats['edges_after'], stats['rules'], stats['seconds'])
    return grammar, stats
