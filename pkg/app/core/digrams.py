"""
Módulo de conteo de incidence-types y dígramas
"""
import heapq
from collections import Counter, defaultdict
from itertools import combinations
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

from config import settings
from core.errors import EmptyCountsError, SizeLimitError
from core.graph_model import Edge, Hypergraph


class IncidenceType(NamedTuple):
    """Par (etiqueta, posición) que describe cómo toca una arista a un nodo"""
    label: int
    conn_type: int


class Digram(NamedTuple):
    """Par canónico de incidence-types (first <= second)"""
    first: IncidenceType
    second: IncidenceType


def make_digram(i1: Tuple[int, int], i2: Tuple[int, int]) -> Digram:
    i1, i2 = IncidenceType(*i1), IncidenceType(*i2)
    return Digram(i1, i2) if i1 <= i2 else Digram(i2, i1)


def pair_count(c1: int, c2: int, same: bool) -> int:
    """count_v para un par de incidence-types en un nodo"""
    return c1 // 2 if same else min(c1, c2)


class CountTable:
    """c: V x IT -> N, un Counter por nodo"""

    def __init__(self):
        self.by_node: Dict[int, Counter] = defaultdict(Counter)

    def __getitem__(self, key: Tuple[int, IncidenceType]) -> int:
        node, itype = key
        counter = self.by_node.get(node)
        return counter[itype] if counter else 0

    def nodes(self) -> Iterator[int]:
        return iter(self.by_node)

    def at(self, node: int) -> Counter:
        return self.by_node.get(node, Counter())

    def as_dict(self) -> Dict[int, Dict[IncidenceType, int]]:
        return {v: {i: n for i, n in c.items() if n} for v, c in self.by_node.items() if any(c.values())}


class DigramCounts:
    """
    count: D -> N con extracción del máximo.

    El montículo guarda entradas (-count, dígrama) y se limpia de forma
    perezosa: una entrada es válida si coincide con el valor actual.
    Los dígramas retirados (ya reemplazados o descartados) dejan de contarse.
    """

    def __init__(self):
        self._counts: Dict[Digram, int] = {}
        self._heap: List[Tuple[int, Digram]] = []
        self.retired: Set[Digram] = set()

    def __len__(self) -> int:
        return len(self._counts)

    def __getitem__(self, digram: Digram) -> int:
        return self._counts.get(digram, 0)

    def __contains__(self, digram: Digram) -> bool:
        return digram in self._counts

    def add(self, digram: Digram, delta: int) -> None:
        if not delta or digram in self.retired:
            return
        value = self._counts.get(digram, 0) + delta
        if value < 0:
            raise AssertionError(f"Conteo negativo para {digram}: {value}")
        if value:
            self._counts[digram] = value
            heapq.heappush(self._heap, (-value, digram))
        else:
            del self._counts[digram]
        if len(self._heap) > 4 * len(self._counts) + 1024:
            self._rebuild_heap()

    def retire(self, digram: Digram) -> None:
        self._counts.pop(digram, None)
        self.retired.add(digram)

    def _rebuild_heap(self) -> None:
        self._heap = [(-n, d) for d, n in self._counts.items()]
        heapq.heapify(self._heap)

    def most_frequent(self, accept: Optional[Callable[[Digram], bool]] = None) -> Tuple[Digram, int]:
        """
        Dígrama de mayor conteo; empates por orden canónico

        Args:
            accept: Filtro opcional; los dígramas rechazados se retiran
        """
        heap = self._heap
        while heap:
            neg, digram = heap[0]
            if self._counts.get(digram) != -neg:
                heapq.heappop(heap)
                continue
            if accept is not None and not accept(digram):
                heapq.heappop(heap)
                self.retire(digram)
                continue
            return digram, -neg
        raise EmptyCountsError("No quedan dígramas con conteo positivo")

    def as_dict(self) -> Dict[Digram, int]:
        return dict(self._counts)

    def items(self):
        return self._counts.items()


def count_incidence(graph: Hypergraph) -> CountTable:
    """Un recorrido sobre las aristas: c(e[m], (label(e), m)) += 1"""
    table = CountTable()
    for edge in graph.edges:
        for m, v in enumerate(edge.nodes):
            table.by_node[v][IncidenceType(edge.label, m)] += 1
    return table


def node_digram_counts(counter: Counter) -> Dict[Digram, int]:
    """count_v de todos los pares de incidence-types presentes en un nodo"""
    types = sorted(i for i, n in counter.items() if n > 0)
    result = {}
    for i in types:
        value = counter[i] // 2
        if value:
            result[Digram(i, i)] = value
    for i1, i2 in combinations(types, 2):
        result[Digram(i1, i2)] = min(counter[i1], counter[i2])
    return result


def count_digrams(table: CountTable) -> DigramCounts:
    """Estimación count(d) = Σ_v count_v(d)"""
    totals: Counter = Counter()
    for counter in table.by_node.values():
        totals.update(node_digram_counts(counter))
    counts = DigramCounts()
    for digram, value in totals.items():
        counts.add(digram, value)
    return counts


def most_frequent(counts: DigramCounts) -> Tuple[Digram, int]:
    return counts.most_frequent()


def _shift(table: CountTable, counts: DigramCounts, node: int, itype: IncidenceType, delta: int) -> None:
    """Cambiar c(node, itype) en ±1 y ajustar count con la diferencia exacta de count_v"""
    counter = table.by_node[node]
    old = counter[itype]
    new = old + delta
    if new < 0:
        raise AssertionError(f"c({node}, {itype}) negativo")
    for other, c2 in list(counter.items()):
        if c2 <= 0:
            continue
        if other == itype:
            diff = pair_count(new, new, True) - pair_count(old, old, True)
        else:
            diff = min(new, c2) - min(old, c2)
        if diff:
            counts.add(make_digram(itype, other), diff)
    if new:
        counter[itype] = new
    else:
        del counter[itype]
        if not counter:
            del table.by_node[node]


def update_counts(table: CountTable, counts: DigramCounts, removed: Optional[Edge], added: Optional[Edge] = None) -> None:
    """
    Mantener c y count al quitar una arista y, opcionalmente, añadir otra

    Los ajustes reproducen exactamente el recuento desde cero (sin los
    dígramas retirados).
    """
    if removed is not None:
        for m, v in enumerate(removed.nodes):
            _shift(table, counts, v, IncidenceType(removed.label, m), -1)
    if added is not None:
        for m, v in enumerate(added.nodes):
            _shift(table, counts, v, IncidenceType(added.label, m), +1)


def digram_occurrences(graph: Hypergraph, digram: Digram) -> List[Tuple[int, int]]:
    """Todas las ocurrencias (i, j) de aristas distintas que comparten el nodo del dígrama"""
    (a1, m1), (a2, m2) = digram
    by_node: Dict[int, List[int]] = defaultdict(list)
    for j, edge in enumerate(graph.edges):
        if edge.label == a2:
            by_node[edge.nodes[m2]].append(j)
    found = set()
    for i, edge in enumerate(graph.edges):
        if edge.label != a1:
            continue
        for j in by_node.get(edge.nodes[m1], ()):
            if i != j:
                found.add((min(i, j), max(i, j)))
    return sorted(found)


def brute_force_max_occurrences(graph: Hypergraph, digram: Digram,
                                limit: int = settings.ORACLE_EDGE_LIMIT) -> int:
    """
    Tamaño máximo de un conjunto de ocurrencias disjuntas en aristas (búsqueda exhaustiva)

    Args:
        graph: Grafo pequeño
        digram: Dígrama a evaluar
        limit: Máximo de aristas con las etiquetas del dígrama
    """
    labels = {digram.first.label, digram.second.label}
    relevant = sum(1 for e in graph.edges if e.label in labels)
    if relevant > limit:
        raise SizeLimitError(f"El oráculo admite como mucho {limit} aristas relevantes ({relevant})")
    occurrences = digram_occurrences(graph, digram)
    involved = len({i for pair in occurrences for i in pair})

    best = 0

    def search(start: int, used: frozenset, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        # cada ocurrencia consume dos aristas distintas
        bound = min(len(occurrences) - start, (involved - len(used)) // 2)
        if size + bound <= best:
            return
        for idx in range(start, len(occurrences)):
            i, j = occurrences[idx]
            if i in used or j in used:
                continue
            search(idx + 1, used | {i, j}, size + 1)

    search(0, frozenset(), 0)
    return best
