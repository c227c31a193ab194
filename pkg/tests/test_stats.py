"""Tests para utils: estadísticas de contenedores y configuración del logging"""
import logging
import sys
from pathlib import Path

import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from core.codec import HEADER, deserialize, serialize
from utils.log import configure_logging
from utils.stats import container_summary, section_sizes, start_graph_breakdown, summarize_latencies


class TestStats:
    @pytest.fixture
    def view(self, gf_grammar, gf_dictionary):
        data = serialize(gf_grammar, gf_dictionary)
        return deserialize(data), len(data)

    def test_section_sizes(self, view):
        view, total = view
        df = section_sizes(view)
        assert list(df['Sección']) == ['header', 'dictionary', 'labels', 'rules', 'start_graph', 'nt_matrix']
        assert df['Bytes'].sum() == total
        assert df.loc[0, 'Bytes'] == HEADER.size
        assert df['%'].sum() == pytest.approx(100, abs=0.1)

    def test_start_graph_breakdown(self, view):
        view, _ = view
        df = start_graph_breakdown(view)
        assert set(df['Estructura']) == {'labels', 'incidence', 'fn_table', 'fn_ids'}
        assert (df['Bits'] > 0).all()

    def test_container_summary(self, view):
        view, total = view
        summary = container_summary(view)
        assert summary['nodes'] == 14
        assert summary['terminal_labels'] == 2
        assert summary['rules'] == 1
        assert summary['rule_edges'] == 2
        assert summary['start_edges'] == 3
        assert summary['fn_table'] == 3
        assert summary['max_rank'] == 3
        assert summary['itr_plus'] is False
        assert summary['bytes'] == total

    def test_summarize_latencies(self):
        measurements = pd.DataFrame({
            'query': ['a', 'a', 'b', 'c'],
            'shape': ['S??', 'S??', '?P?', 'S??'],
            'seconds': [0.001, 0.003, 0.010, 0.002],
            'results': [2, 2, 5, 0],
        })
        summary = summarize_latencies(measurements)
        assert summary.loc['S??', 'queries'] == 3
        assert summary.loc['S??', 'mean_ms'] == pytest.approx(2.0)
        assert summary.loc['S??', 'median_ms'] == pytest.approx(2.0)
        assert summary.loc['?P?', 'mean_results'] == 5

    def test_summarize_empty(self):
        summary = summarize_latencies(pd.DataFrame(columns=['shape', 'seconds', 'results']))
        assert summary.empty
        assert 'mean_ms' in summary.columns


class TestLogging:
    @pytest.fixture(autouse=True)
    def restore_root_logger(self):
        root = logging.getLogger()
        handlers, level = list(root.handlers), root.level
        yield
        root.handlers[:] = handlers
        root.setLevel(level)

    def test_levels(self):
        assert configure_logging('info') == logging.INFO
        assert logging.getLogger().level == logging.INFO
        assert configure_logging('DEBUG') == logging.DEBUG

    def test_off(self):
        assert configure_logging('off') is None

    def test_reads_environment(self, monkeypatch):
        monkeypatch.setenv('ITR_LOG', 'debug')
        assert configure_logging() == logging.DEBUG

    def test_default_is_off(self, monkeypatch):
        monkeypatch.delenv('ITR_LOG', raising=False)
        assert configure_logging() is None

    def test_invalid_level(self):
        with pytest.raises(ValueError):
            configure_logging('verbose')
