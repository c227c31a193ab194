"""Tests para digrams.py: conteo, estimación y oráculo de fuerza bruta"""
import random
import sys
from itertools import combinations_with_replacement
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.digrams import (
    Digram,
    DigramCounts,
    IncidenceType,
    brute_force_max_occurrences,
    count_digrams,
    count_incidence,
    make_digram,
    most_frequent,
    node_digram_counts,
    update_counts,
)
from core.errors import EmptyCountsError, SizeLimitError
from core.graph_model import Edge, Hypergraph

G, F = 0, 1


def it(label, m):
    return IncidenceType(label, m)


class TestCounting:
    def test_incidence_counts(self, gf_graph):
        table = count_incidence(gf_graph)
        assert table[10, it(F, 0)] == 2
        assert table[10, it(G, 0)] == 1
        assert table[10, it(G, 1)] == 1
        assert table[13, it(G, 0)] == 0

    def test_empty_graph(self):
        assert count_incidence(Hypergraph(3, [])).as_dict() == {}

    def test_per_node_counts(self, gf_graph):
        at_10 = node_digram_counts(count_incidence(gf_graph).at(10))
        assert at_10[make_digram((F, 0), (F, 0))] == 1
        assert at_10[make_digram((F, 0), (G, 0))] == 1
        assert make_digram((G, 0), (G, 0)) not in at_10

    def test_global_counts(self, gf_graph):
        counts = count_digrams(count_incidence(gf_graph))
        assert counts[make_digram((G, 1), (F, 0))] == 2
        others = {d: n for d, n in counts.items() if d != make_digram((G, 1), (F, 0))}
        assert set(others.values()) == {1}
        assert len(others) == 6

    def test_single_edge_has_no_digrams(self):
        counts = count_digrams(count_incidence(Hypergraph(2, [Edge(F, (0, 1))])))
        assert len(counts) == 0

    def test_canonical_order(self):
        assert make_digram((F, 0), (G, 1)) == Digram(it(G, 1), it(F, 0))


class TestMostFrequent:
    def test_maximum(self, gf_graph):
        counts = count_digrams(count_incidence(gf_graph))
        assert most_frequent(counts) == (make_digram((G, 1), (F, 0)), 2)

    def test_tie_break_by_canonical_order(self):
        counts = DigramCounts()
        d1 = make_digram((0, 0), (1, 0))
        d2 = make_digram((0, 1), (1, 0))
        counts.add(d2, 3)
        counts.add(d1, 3)
        assert most_frequent(counts) == (d1, 3)

    def test_single_entry(self):
        counts = DigramCounts()
        d = make_digram((0, 0), (0, 0))
        counts.add(d, 5)
        assert most_frequent(counts) == (d, 5)

    def test_empty(self):
        with pytest.raises(EmptyCountsError):
            most_frequent(DigramCounts())

    def test_retired_digrams_are_skipped(self):
        counts = DigramCounts()
        d1, d2 = make_digram((0, 0), (1, 0)), make_digram((0, 1), (1, 0))
        counts.add(d1, 4)
        counts.add(d2, 2)
        counts.retire(d1)
        counts.add(d1, 3)
        assert most_frequent(counts) == (d2, 2)

    def test_accept_filter(self):
        counts = DigramCounts()
        d1, d2 = make_digram((0, 0), (1, 0)), make_digram((0, 1), (1, 0))
        counts.add(d1, 4)
        counts.add(d2, 2)
        assert counts.most_frequent(lambda d: d != d1) == (d2, 2)
        assert d1 in counts.retired

    def test_negative_count_is_an_error(self):
        counts = DigramCounts()
        with pytest.raises(AssertionError):
            counts.add(make_digram((0, 0), (1, 0)), -1)


class TestUpdateCounts:
    def test_min_drops_when_removing(self):
        x, y = 0, 1
        graph = Hypergraph(5, [Edge(x, (0, 1)), Edge(x, (0, 2)), Edge(y, (0, 3)), Edge(y, (0, 4))])
        table = count_incidence(graph)
        counts = count_digrams(table)
        d = make_digram((x, 0), (y, 0))
        assert counts[d] == 2
        update_counts(table, counts, Edge(x, (0, 1)))
        assert counts[d] == 1
        assert make_digram((x, 0), (x, 0)) not in counts
        assert table[0, it(x, 0)] == 1

    def test_same_type_parity(self):
        graph = Hypergraph(4, [Edge(0, (0, 1)), Edge(0, (0, 2)), Edge(0, (0, 3))])
        table = count_incidence(graph)
        counts = count_digrams(table)
        d = make_digram((0, 0), (0, 0))
        assert counts[d] == 1
        update_counts(table, counts, Edge(0, (0, 1)))
        assert counts[d] == 1
        update_counts(table, counts, Edge(0, (0, 2)))
        assert counts[d] == 0

    def test_isolated_edge(self):
        graph = Hypergraph(4, [Edge(0, (0, 1)), Edge(1, (2, 3))])
        table = count_incidence(graph)
        counts = count_digrams(table)
        before = counts.as_dict()
        update_counts(table, counts, Edge(1, (2, 3)))
        assert counts.as_dict() == before
        assert 2 not in table.as_dict()

    def test_added_edge_matches_recount(self, random_graph):
        rng = random.Random(7)
        for _ in range(50):
            graph = random_graph(rng, max_edges=10)
            extra = Edge(5, (rng.randrange(graph.node_count), rng.randrange(graph.node_count), 0))
            table = count_incidence(graph)
            counts = count_digrams(table)
            update_counts(table, counts, graph.edges[0], extra)
            expected = Hypergraph(graph.node_count, graph.edges[1:] + [extra])
            assert counts.as_dict() == count_digrams(count_incidence(expected)).as_dict()


class TestOracle:
    def test_shared_rule_graph(self, gf_graph):
        assert brute_force_max_occurrences(gf_graph, make_digram((G, 1), (F, 0))) == 2

    def test_single_edge(self):
        assert brute_force_max_occurrences(Hypergraph(2, [Edge(0, (0, 1))]), make_digram((0, 0), (0, 1))) == 0

    def test_loop_is_not_an_occurrence(self):
        graph = Hypergraph(1, [Edge(0, (0, 0))])
        assert brute_force_max_occurrences(graph, make_digram((0, 0), (0, 1))) == 0
        assert count_digrams(count_incidence(graph))[make_digram((0, 0), (0, 1))] == 1

    def test_size_limit(self):
        graph = Hypergraph(2, [Edge(0, (0, 1))] * 21)
        with pytest.raises(SizeLimitError):
            brute_force_max_occurrences(graph, make_digram((0, 0), (0, 0)))

    def test_estimate_bounds_maximum_occurrences(self, random_graph):
        rng = random.Random(2024)
        violations = []
        for _ in range(1000):
            graph = random_graph(rng, max_edges=12, max_nodes=5, max_labels=3)
            counts = count_digrams(count_incidence(graph))
            labels = sorted({e.label for e in graph.edges})
            types = [it(a, m) for a in labels for m in (0, 1)]
            for i1, i2 in combinations_with_replacement(types, 2):
                d = Digram(i1, i2)
                estimate = counts[d]
                exact = brute_force_max_occurrences(graph, d)
                if estimate < exact:
                    violations.append((graph, d, estimate, exact))
                elif (i1.label != i2.label or i1.conn_type == i2.conn_type) and estimate != exact:
                    violations.append((graph, d, estimate, exact))
        assert violations == []
