"""Tests para dictionary.py"""
import logging
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.dictionary import Dictionary, TermKind, apply_itr_plus, strip_itr_plus
from core.errors import ConflictingLabelsError, DanglingIdError
from core.graph_model import Edge, Hypergraph, graphs_equal


class TestDictionary:
    @pytest.fixture
    def dictionary(self):
        return Dictionary()

    def test_intern_is_idempotent(self, dictionary):
        first = dictionary.intern('<a>', TermKind.NODE)
        second = dictionary.intern('<b>', TermKind.NODE)
        assert (first, second) == (0, 1)
        assert dictionary.intern('<a>', TermKind.NODE) == 0
        assert dictionary.node_terms == ['<a>', '<b>']

    def test_kinds_are_separate(self, dictionary):
        node = dictionary.intern('x', TermKind.NODE)
        label = dictionary.intern('x', TermKind.EDGE_LABEL)
        node_label = dictionary.intern('x', TermKind.NODE_LABEL)
        assert node == 0
        assert label == 0
        assert node_label == 1
        assert dictionary.edge_label_terms == ['x', 'x']

    def test_lookup_and_find(self, dictionary):
        dictionary.intern('<p>', TermKind.EDGE_LABEL)
        assert dictionary.lookup(0, TermKind.EDGE_LABEL) == '<p>'
        assert dictionary.find('<p>', TermKind.EDGE_LABEL) == 0
        assert dictionary.find('<q>', TermKind.EDGE_LABEL) is None

    def test_dangling_id(self, dictionary):
        with pytest.raises(DanglingIdError):
            dictionary.lookup(3, TermKind.NODE)

    def test_implicit_nodes(self):
        dictionary = Dictionary(implicit_nodes=True)
        assert dictionary.find('42', TermKind.NODE) == 42
        assert dictionary.find('abc', TermKind.NODE) is None
        assert dictionary.find('²', TermKind.NODE) is None
        assert dictionary.find('٣', TermKind.NODE) is None
        assert dictionary.lookup(7, TermKind.NODE) == '7'

    def test_rebuild_label_index(self):
        dictionary = Dictionary(edge_label_terms=['p', 'x', 'p'])
        dictionary.rebuild_label_index({1, 2})
        assert dictionary.find('p', TermKind.EDGE_LABEL) == 0
        assert dictionary.find('p', TermKind.NODE_LABEL) == 2
        assert sorted(dictionary.node_label_terms()) == ['p', 'x']


class TestItrPlus:
    @pytest.fixture
    def labeled(self):
        dictionary = Dictionary(implicit_nodes=True)
        dictionary.intern('edge', TermKind.EDGE_LABEL)
        graph = Hypergraph(4, [Edge(0, (0, 1)), Edge(0, (2, 3))])
        labels = {0: 'x', 1: 'o', 2: 'x', 3: 'b'}
        return graph, labels, dictionary

    def test_one_entry_per_distinct_label(self, labeled):
        graph, labels, dictionary = labeled
        result = apply_itr_plus(graph, labels, dictionary)
        assert len(result.edges) == 6
        assert sorted(dictionary.node_label_terms()) == ['b', 'o', 'x']
        assert dictionary.label_count == 4
        assert all(e.rank == 1 for e in result.edges[2:])

    def test_round_trip(self, labeled):
        graph, labels, dictionary = labeled
        stripped, recovered = strip_itr_plus(apply_itr_plus(graph, labels, dictionary), dictionary)
        assert graphs_equal(stripped, graph)
        assert recovered == labels

    def test_node_count_grows_for_isolated_labeled_nodes(self):
        dictionary = Dictionary(implicit_nodes=True)
        result = apply_itr_plus(Hypergraph(2, []), {5: 'x'}, dictionary)
        assert result.node_count == 6

    def test_conflicting_labels(self):
        dictionary = Dictionary()
        x = dictionary.intern('x', TermKind.NODE_LABEL)
        o = dictionary.intern('o', TermKind.NODE_LABEL)
        graph = Hypergraph(1, [Edge(x, (0,)), Edge(o, (0,))])
        with pytest.raises(ConflictingLabelsError):
            strip_itr_plus(graph, dictionary)

    def test_duplicate_label_edges_warn(self, caplog):
        dictionary = Dictionary()
        x = dictionary.intern('x', TermKind.NODE_LABEL)
        graph = Hypergraph(1, [Edge(x, (0,)), Edge(x, (0,))])
        with caplog.at_level(logging.WARNING, logger='core.dictionary'):
            _, labels = strip_itr_plus(graph, dictionary)
        assert labels == {0: 'x'}
        assert 'duplicadas' in caplog.text
