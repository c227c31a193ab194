"""Fixtures compartidas: grafos de ejemplo y generadores aleatorios"""
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.dictionary import Dictionary
from core.graph_model import Edge, Grammar, Hypergraph, LabelInfo, LabelKind, Rule

G, F, B = 0, 1, 2


def make_random_graph(rng: random.Random, max_edges: int = 12, max_nodes: int = 5,
                      max_labels: int = 3, min_edges: int = 1) -> Hypergraph:
    """Grafo de rango 2 con bucles y aristas repetidas permitidos"""
    nodes = rng.randint(1, max_nodes)
    labels = rng.randint(1, max_labels)
    edges = [Edge(rng.randrange(labels), (rng.randrange(nodes), rng.randrange(nodes)))
             for _ in range(rng.randint(min_edges, max_edges))]
    return Hypergraph(nodes, edges)


def make_repetitive_graph(rng: random.Random, blocks: int = 20, labels: int = 3) -> Hypergraph:
    """Copias de un mismo motivo con ruido, para que RePair cree reglas"""
    motif = [(rng.randrange(labels), rng.randrange(4), rng.randrange(4)) for _ in range(4)]
    edges = []
    for b in range(blocks):
        base = 4 * b
        edges.extend(Edge(label, (base + s, base + d)) for label, s, d in motif)
        if rng.random() < 0.3:
            edges.append(Edge(rng.randrange(labels), (base + rng.randrange(4), rng.randrange(4 * blocks))))
    return Hypergraph(4 * blocks, edges)


@pytest.fixture
def gf_graph():
    """g(11,12), f(12,13), g(10,10), f(10,11), f(10,12) con g=0 y f=1"""
    return Hypergraph(14, [
        Edge(G, (11, 12)),
        Edge(F, (12, 13)),
        Edge(G, (10, 10)),
        Edge(F, (10, 11)),
        Edge(F, (10, 12)),
    ])


@pytest.fixture
def gf_grammar():
    """Gramática con la regla B -> {g(1,0), f(0,2)} y su grafo inicial"""
    labels = [LabelInfo(G, 2), LabelInfo(F, 2), LabelInfo(B, 3, LabelKind.NONTERMINAL)]
    rule = Rule(B, Hypergraph(3, [Edge(G, (1, 0)), Edge(F, (0, 2))]))
    start = Hypergraph(14, [Edge(B, (12, 11, 13)), Edge(B, (10, 10, 11)), Edge(F, (10, 12))])
    return Grammar(labels, [rule], start)


@pytest.fixture
def gf_dictionary():
    return Dictionary(node_terms=[f"<n{i}>" for i in range(14)], edge_label_terms=['<g>', '<f>'])


@pytest.fixture
def random_graph():
    return make_random_graph


@pytest.fixture
def repetitive_graph():
    return make_repetitive_graph
