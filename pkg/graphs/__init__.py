from graphs.blowup import BlowupGraph, blowup
from graphs.graph import Graph, average_degree, non_adjacent
from graphs.graph_io import format_graph, parse_graph, read_graph, write_graph

__all__ = [
    "BlowupGraph",
    "Graph",
    "average_degree",
    "blowup",
    "format_graph",
    "non_adjacent",
    "parse_graph",
    "read_graph",
    "write_graph",
]
