"""
Módulo del modelo de hipergrafos y gramáticas SL-HR
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

import networkx as nx

from core.errors import UnknownNonterminalError, RankMismatchError


class LabelKind(Enum):
    TERMINAL = 'terminal'
    NONTERMINAL = 'nonterminal'


@dataclass(frozen=True)
class LabelInfo:
    """Símbolo del alfabeto con rango fijo"""
    id: int
    rank: int
    kind: LabelKind = LabelKind.TERMINAL

    def __post_init__(self):
        if self.rank < 1:
            raise RankMismatchError(f"El rango de la etiqueta {self.id} debe ser >= 1")

    @property
    def is_terminal(self) -> bool:
        return self.kind is LabelKind.TERMINAL


class Edge(NamedTuple):
    """Hiperarista: etiqueta y secuencia ordenada de nodos"""
    label: int
    nodes: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.nodes)


@dataclass
class Hypergraph:
    """Hipergrafo con nodos 0..node_count-1 y multiconjunto ordenado de aristas"""
    node_count: int
    edges: List[Edge] = field(default_factory=list)

    def __post_init__(self):
        for edge in self.edges:
            for v in edge.nodes:
                if v >= self.node_count or v < 0:
                    raise ValueError(f"El nodo {v} de {edge} está fuera de rango (node_count={self.node_count})")

    def __len__(self) -> int:
        return len(self.edges)

    def copy(self) -> 'Hypergraph':
        return Hypergraph(self.node_count, list(self.edges))


@dataclass(frozen=True)
class Rule:
    """Regla A -> G_A; todos los nodos de G_A son externos"""
    head: int
    rhs: Hypergraph

    @property
    def rank(self) -> int:
        return self.rhs.node_count


@dataclass(frozen=True)
class Violation:
    """Infracción de las condiciones de línea recta"""
    kind: str
    label: int
    message: str


@dataclass
class Grammar:
    """
    Gramática SL-HR: tabla de etiquetas, reglas en orden de creación y grafo inicial.

    Las etiquetas terminales ocupan los IDs 0..T-1; los no terminales siguen
    en orden de creación.
    """
    labels: List[LabelInfo]
    rules: List[Rule]
    start_graph: Hypergraph
    _rule_index: Dict[int, Rule] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._rule_index = {}
        for rule in self.rules:
            self._rule_index.setdefault(rule.head, rule)

    @property
    def terminal_count(self) -> int:
        return sum(1 for info in self.labels if info.is_terminal)

    def is_terminal(self, label: int) -> bool:
        return self.labels[label].is_terminal

    def rank(self, label: int) -> int:
        return self.labels[label].rank

    def rule_for(self, label: int) -> Rule:
        try:
            return self._rule_index[label]
        except KeyError:
            raise UnknownNonterminalError(f"No existe regla para el no terminal {label}") from None


def expand_edge(grammar: Grammar, edge: Edge) -> List[Edge]:
    """
    Expandir una arista no terminal un solo paso

    Args:
        grammar: Gramática que contiene la regla de la etiqueta
        edge: Arista no terminal con sus nodos reales

    Returns:
        Aristas del lado derecho con cada nodo formal i sustituido por edge.nodes[i]
    """
    rule = grammar.rule_for(edge.label)
    if rule.rank != edge.rank:
        raise RankMismatchError(
            f"La arista {edge} tiene rango {edge.rank} pero la regla espera {rule.rank}"
        )
    nodes = edge.nodes
    return [Edge(e.label, tuple(nodes[i] for i in e.nodes)) for e in rule.rhs.edges]


def iter_expansion(grammar: Grammar, edges: Iterable[Edge]) -> Iterator[Edge]:
    """Expandir en profundidad hasta obtener solo aristas terminales"""
    for root in edges:
        stack = [root]
        while stack:
            edge = stack.pop()
            if grammar.is_terminal(edge.label):
                yield edge
            else:
                stack.extend(reversed(expand_edge(grammar, edge)))


def decompress(grammar: Grammar) -> Hypergraph:
    """Obtener el grafo descomprimido; el número de nodos no cambia"""
    edges = list(iter_expansion(grammar, grammar.start_graph.edges))
    return Hypergraph(grammar.start_graph.node_count, edges)


def rule_dag(grammar: Grammar) -> nx.DiGraph:
    """Grafo de referencias entre no terminales (A -> B si B aparece en G_A)"""
    dag = nx.DiGraph()
    for rule in grammar.rules:
        dag.add_node(rule.head)
        for edge in rule.rhs.edges:
            if not grammar.is_terminal(edge.label):
                dag.add_edge(rule.head, edge.label)
    return dag


def validate_straight_line(grammar: Grammar) -> Optional[Violation]:
    """
    Comprobar que la gramática es de línea recta

    Returns:
        None si es válida, o la primera infracción encontrada
    """
    known = range(len(grammar.labels))
    seen = set()
    for rule in grammar.rules:
        if rule.head not in known:
            return Violation('unknown-label', rule.head, f"La etiqueta {rule.head} no está en la tabla de etiquetas")
        if grammar.is_terminal(rule.head):
            return Violation('terminal-head', rule.head, f"La etiqueta {rule.head} es terminal y tiene regla")
        if rule.head in seen:
            return Violation('duplicate-rule', rule.head, f"El no terminal {rule.head} tiene más de una regla")
        seen.add(rule.head)

    used = [e.label for e in grammar.start_graph.edges]
    used += [e.label for rule in grammar.rules for e in rule.rhs.edges]
    for label in used:
        if label not in known:
            return Violation('unknown-label', label, f"La etiqueta {label} no está en la tabla de etiquetas")
        if not grammar.is_terminal(label) and label not in seen:
            return Violation('missing-rule', label, f"El no terminal {label} no tiene regla")

    dag = rule_dag(grammar)
    try:
        cycle = nx.find_cycle(dag)
    except nx.NetworkXNoCycle:
        return None
    head = cycle[0][0]
    return Violation('recursion', head, f"Ciclo en las reglas: {cycle}")


def edge_multiset(graph: Hypergraph) -> Counter:
    return Counter((e.label, tuple(e.nodes)) for e in graph.edges)


def graphs_equal(g1: Hypergraph, g2: Hypergraph) -> bool:
    """Igualdad de número de nodos y de multiconjuntos de aristas"""
    return g1.node_count == g2.node_count and edge_multiset(g1) == edge_multiset(g2)


def edges_size(edges: Iterable[Edge]) -> int:
    return sum(1 + len(e.nodes) for e in edges)


def grammar_size(grammar: Grammar) -> int:
    """Tamaño según el modelo de coste size(e) = 1 + rank(e)"""
    return edges_size(grammar.start_graph.edges) + sum(edges_size(r.rhs.edges) for r in grammar.rules)


def terminal_grammar(graph: Hypergraph, label_count: int) -> Grammar:
    """
    Envolver un grafo terminal en una gramática sin reglas

    Args:
        graph: Grafo con etiquetas 0..label_count-1
        label_count: Número de etiquetas terminales del diccionario

    Returns:
        Grammar con rangos deducidos de las aristas (2 si la etiqueta no aparece)
    """
    ranks: Dict[int, int] = {}
    for edge in graph.edges:
        if edge.label >= label_count:
            raise RankMismatchError(f"La etiqueta {edge.label} no existe en el diccionario")
        known = ranks.setdefault(edge.label, edge.rank)
        if known != edge.rank:
            raise RankMismatchError(
                f"La etiqueta {edge.label} aparece con rangos {known} y {edge.rank}"
            )
    labels = [LabelInfo(i, ranks.get(i, 2), LabelKind.TERMINAL) for i in range(label_count)]
    return Grammar(labels, [], graph.copy())
