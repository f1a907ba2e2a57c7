# graphs/graph_io.py

"""
Edge-list text format.

First line `n m`, then m lines `u v` with 0 <= u < v < n, edges sorted
lexicographically, every line newline-terminated.
"""

import logging
from pathlib import Path

from graphs.errors import GraphFormatError
from graphs.graph import Graph

logger = logging.getLogger(__name__)


def format_graph(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def _parse_pair(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split(" ")
    if len(parts) != 2 or not all(p.isascii() and p.isdigit() and str(int(p)) == p for p in parts):
        raise GraphFormatError(f"line {lineno}: expected two decimal integers, got {line!r}")
    return int(parts[0]), int(parts[1])


def parse_graph(text: str) -> Graph:
    """
    Parses the edge-list format, rejecting anything that is not bit-exact.

    Raises:
        GraphFormatError: On malformed headers, loops, duplicates, unsorted
            edges, out-of-range vertices, or a wrong edge count.
    """
    if not text.endswith("\n"):
        raise GraphFormatError("input must be newline-terminated")
    lines = text[:-1].split("\n")
    n, m = _parse_pair(lines[0], 1)
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}")

    edges = []
    previous = None
    for lineno, line in enumerate(body, start=2):
        u, v = _parse_pair(line, lineno)
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop at vertex {u}")
        if u > v:
            raise GraphFormatError(f"line {lineno}: edge must be written with u < v")
        if v >= n:
            raise GraphFormatError(f"line {lineno}: vertex {v} out of range for n={n}")
        if previous is not None:
            if (u, v) == previous:
                raise GraphFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
            if (u, v) < previous:
                raise GraphFormatError(f"line {lineno}: edges are not sorted")
        previous = (u, v)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def read_graph(path: Path) -> Graph:
    with open(path, "r", encoding="ascii", newline="") as f:
        graph = parse_graph(f.read())
    logger.info(f"Read {graph!r} from '{Path(path).name}'")
    return graph


def write_graph(path: Path, graph: Graph) -> None:
    with open(path, "w", encoding="ascii", newline="") as f:
        f.write(format_graph(graph))
    logger.info(f"  -> Wrote {graph!r} to '{Path(path).name}'")
