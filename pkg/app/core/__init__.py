"""
Módulo core
"""
from .graph_model import Edge, Grammar, Hypergraph, decompress, graphs_equal
from .graph_loader import InputFormat, load_graph, parse, emit
from .repair import compress_graph, prune, replace_digrams
from .codec import deserialize, serialize
from .query import TriplePattern, answer, neighborhood, node_label
from .compressor import compress_parsed, decompress_container, load_container
