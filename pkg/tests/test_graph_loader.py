"""Tests para graph_loader.py"""
import io
import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.dictionary import TermKind
from core.errors import ParseError
from core.graph_loader import InputFormat, emit, emit_node_labels, load_graph, parse
from core.graph_model import Edge

NT = InputFormat('nt')
EL = InputFormat('el')


class TestNTriples:
    @pytest.fixture
    def content(self):
        return (
            "# comentario\n"
            "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n"
            "\n"
            "<http://ex.org/b> <http://ex.org/q> \"hola mundo\"@es .\n"
            "_:x1 <http://ex.org/p> <http://ex.org/a> .\n"
            "<http://ex.org/a> <http://ex.org/p> \"3\"^^<http://www.w3.org/2001/XMLSchema#int> .\n"
        )

    def test_parse_basic(self, content):
        parsed = parse(content, NT)
        d = parsed.dictionary
        assert len(parsed.graph.edges) == 4
        assert d.node_terms[:3] == ['<http://ex.org/a>', '<http://ex.org/b>', '"hola mundo"@es']
        assert d.edge_label_terms == ['<http://ex.org/p>', '<http://ex.org/q>']
        assert parsed.graph.edges[0] == Edge(0, (0, 1))
        assert parsed.graph.node_count == len(d.node_terms)
        assert parsed.node_labels is None

    def test_malformed_line_reports_line_number(self):
        content = "<a> <p> <b> .\n<a> <p> .\n"
        with pytest.raises(ParseError) as excinfo:
            parse(content, NT)
        assert excinfo.value.line == 2

    def test_literal_subject_rejected(self):
        with pytest.raises(ParseError):
            parse('"lit" <p> <b> .\n', NT)

    def test_accepts_file_objects(self, content):
        parsed = parse(io.BytesIO(content.encode('utf-8')), NT)
        assert len(parsed.graph.edges) == 4

    def test_invalid_utf8(self):
        with pytest.raises(ParseError):
            parse(b"<a> <p> <\xff> .\n", NT)

    def test_emit_round_trip(self, content):
        parsed = parse(content, NT)
        output = emit(parsed.graph, parsed.dictionary, NT).decode('utf-8')
        expected = [line for line in content.splitlines() if line and not line.startswith('#')]
        assert Counter(output.splitlines()) == Counter(expected)


class TestEdgeList:
    def test_parse_edgelist(self):
        parsed = parse("0\tknows\t1\n1\tlikes\t3\n0\tknows\t3\n", EL)
        assert parsed.dictionary.implicit_nodes
        assert parsed.graph.node_count == 4
        assert parsed.graph.edges == [Edge(0, (0, 1)), Edge(1, (1, 3)), Edge(0, (0, 3))]
        assert parsed.dictionary.lookup(3, TermKind.NODE) == '3'

    def test_node_labels(self):
        parsed = parse("0\tp\t1\n", EL, node_labels="0\tx\n1\to\n4\tx\n")
        assert parsed.node_labels == {0: 'x', 1: 'o', 4: 'x'}
        assert parsed.graph.node_count == 5

    def test_conflicting_node_labels(self):
        with pytest.raises(ParseError):
            parse("0\tp\t1\n", EL, node_labels="0\tx\n0\to\n")

    def test_non_numeric_node(self):
        with pytest.raises(ParseError) as excinfo:
            parse("0\tp\t1\na\tp\t2\n", EL)
        assert excinfo.value.line == 2

    def test_missing_field(self):
        with pytest.raises(ParseError):
            parse("0\tp\t1\n1\tp\n", EL)

    def test_emit_edgelist(self):
        parsed = parse("0\tknows\t1\n1\tlikes\t3\n", EL)
        assert emit(parsed.graph, parsed.dictionary, EL) == b"0\tknows\t1\n1\tlikes\t3\n"

    def test_emit_node_labels(self):
        parsed = parse("0\tp\t1\n", EL, node_labels="1\to\n0\tx\n")
        assert emit_node_labels(parsed.node_labels, parsed.dictionary) == b"0\tx\n1\to\n"


class TestInputFormat:
    def test_unknown_format(self):
        with pytest.raises(ValueError):
            InputFormat('csv')

    def test_labels_only_for_edgelist(self):
        with pytest.raises(ValueError):
            InputFormat('nt', 'labels.tsv')

    def test_load_graph_returns_error(self):
        parsed, error = load_graph("<a> <p>\n", NT)
        assert parsed is None
        assert 'línea 1' in error

    def test_load_graph_empty(self):
        parsed, error = load_graph("", NT)
        assert parsed is None
        assert error is not None

    def test_load_graph_ok(self):
        parsed, error = load_graph("<a> <p> <b> .\n", NT)
        assert error is None
        assert len(parsed.graph) == 1
