"""Tests para graph_model.py"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.errors import RankMismatchError, UnknownNonterminalError
from core.graph_model import (
    Edge,
    Grammar,
    Hypergraph,
    LabelInfo,
    LabelKind,
    Rule,
    decompress,
    expand_edge,
    grammar_size,
    graphs_equal,
    terminal_grammar,
    validate_straight_line,
)

G, F, B = 0, 1, 2


class TestExpansion:
    def test_expand_edge_substitutes_nodes(self, gf_grammar):
        assert expand_edge(gf_grammar, Edge(B, (12, 11, 13))) == [Edge(G, (11, 12)), Edge(F, (12, 13))]

    def test_expand_edge_with_repeated_node(self, gf_grammar):
        assert expand_edge(gf_grammar, Edge(B, (10, 10, 11))) == [Edge(G, (10, 10)), Edge(F, (10, 11))]

    def test_expand_rank_one_rule(self):
        labels = [LabelInfo(0, 1), LabelInfo(1, 1, LabelKind.NONTERMINAL)]
        grammar = Grammar(labels, [Rule(1, Hypergraph(1, [Edge(0, (0,))]))], Hypergraph(6, []))
        assert expand_edge(grammar, Edge(1, (5,))) == [Edge(0, (5,))]

    def test_unknown_nonterminal(self, gf_grammar):
        grammar = Grammar(gf_grammar.labels + [LabelInfo(3, 2, LabelKind.NONTERMINAL)],
                          gf_grammar.rules, gf_grammar.start_graph)
        with pytest.raises(UnknownNonterminalError):
            expand_edge(grammar, Edge(3, (0, 1)))

    def test_rank_mismatch(self, gf_grammar):
        with pytest.raises(RankMismatchError):
            expand_edge(gf_grammar, Edge(B, (0, 1)))

    def test_decompress_shared_rule(self, gf_grammar, gf_graph):
        result = decompress(gf_grammar)
        assert result.node_count == 14
        assert graphs_equal(result, gf_graph)

    def test_decompress_without_rules(self, gf_graph):
        grammar = terminal_grammar(gf_graph, 2)
        assert decompress(grammar).edges == gf_graph.edges

    def test_nested_rules(self):
        labels = [LabelInfo(0, 2), LabelInfo(1, 3, LabelKind.NONTERMINAL), LabelInfo(2, 3, LabelKind.NONTERMINAL)]
        rules = [
            Rule(1, Hypergraph(3, [Edge(0, (0, 1)), Edge(0, (1, 2))])),
            Rule(2, Hypergraph(3, [Edge(1, (2, 1, 0))])),
        ]
        grammar = Grammar(labels, rules, Hypergraph(3, [Edge(2, (0, 1, 2))]))
        assert decompress(grammar).edges == [Edge(0, (2, 1)), Edge(0, (1, 0))]


class TestValidation:
    def test_valid_grammar(self, gf_grammar):
        assert validate_straight_line(gf_grammar) is None

    def test_recursion(self):
        labels = [LabelInfo(0, 2), LabelInfo(1, 2, LabelKind.NONTERMINAL)]
        grammar = Grammar(labels, [Rule(1, Hypergraph(2, [Edge(1, (0, 1))]))], Hypergraph(2, []))
        violation = validate_straight_line(grammar)
        assert violation is not None
        assert violation.kind == 'recursion'

    def test_duplicate_rule(self):
        labels = [LabelInfo(0, 2), LabelInfo(1, 2, LabelKind.NONTERMINAL)]
        rule = Rule(1, Hypergraph(2, [Edge(0, (0, 1))]))
        violation = validate_straight_line(Grammar(labels, [rule, rule], Hypergraph(2, [])))
        assert violation.kind == 'duplicate-rule'

    def test_missing_rule(self):
        labels = [LabelInfo(0, 2), LabelInfo(1, 2, LabelKind.NONTERMINAL)]
        violation = validate_straight_line(Grammar(labels, [], Hypergraph(2, [Edge(1, (0, 1))])))
        assert violation.kind == 'missing-rule'

    def test_terminal_head(self):
        labels = [LabelInfo(0, 2)]
        violation = validate_straight_line(Grammar(labels, [Rule(0, Hypergraph(2, [Edge(0, (0, 1))]))], Hypergraph(2, [])))
        assert violation.kind == 'terminal-head'

    def test_unknown_rule_head(self):
        labels = [LabelInfo(0, 2)]
        violation = validate_straight_line(Grammar(labels, [Rule(5, Hypergraph(2, [Edge(0, (0, 1))]))], Hypergraph(2, [])))
        assert violation.kind == 'unknown-label'
        assert violation.label == 5

    def test_unknown_edge_label(self):
        labels = [LabelInfo(0, 2), LabelInfo(1, 2, LabelKind.NONTERMINAL)]
        rule = Rule(1, Hypergraph(2, [Edge(7, (0, 1))]))
        violation = validate_straight_line(Grammar(labels, [rule], Hypergraph(2, [Edge(1, (0, 1))])))
        assert violation.kind == 'unknown-label'
        assert violation.label == 7


class TestModel:
    def test_label_rank_must_be_positive(self):
        with pytest.raises(RankMismatchError):
            LabelInfo(0, 0)

    def test_hypergraph_rejects_unknown_nodes(self):
        with pytest.raises(ValueError):
            Hypergraph(2, [Edge(0, (0, 2))])

    def test_graphs_equal_direction_matters(self):
        assert not graphs_equal(Hypergraph(2, [Edge(0, (0, 1))]), Hypergraph(2, [Edge(0, (1, 0))]))

    def test_graphs_equal_ignores_order_but_not_multiplicity(self):
        g1 = Hypergraph(3, [Edge(0, (0, 1)), Edge(0, (1, 2))])
        g2 = Hypergraph(3, [Edge(0, (1, 2)), Edge(0, (0, 1))])
        g3 = Hypergraph(3, [Edge(0, (1, 2)), Edge(0, (0, 1)), Edge(0, (0, 1))])
        assert graphs_equal(g1, g2)
        assert not graphs_equal(g1, g3)

    def test_graphs_equal_node_count(self):
        assert not graphs_equal(Hypergraph(2, []), Hypergraph(3, []))

    def test_grammar_size(self, gf_grammar, gf_graph):
        assert grammar_size(terminal_grammar(gf_graph, 2)) == 15
        assert grammar_size(gf_grammar) == 11 + 6

    def test_terminal_grammar_inconsistent_ranks(self):
        with pytest.raises(RankMismatchError):
            terminal_grammar(Hypergraph(3, [Edge(0, (0, 1)), Edge(0, (2,))]), 1)

    def test_terminal_grammar_default_rank(self):
        grammar = terminal_grammar(Hypergraph(2, [Edge(0, (0,))]), 2)
        assert grammar.rank(0) == 1
        assert grammar.rank(1) == 2
        assert grammar.terminal_count == 2
