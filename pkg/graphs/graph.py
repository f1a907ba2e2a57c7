# graphs/graph.py

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import networkx as nx


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph on the vertices 0..n-1.

    Instances are immutable. Equality is label-sensitive: two graphs are equal
    only if they have the same vertex count and exactly the same edge set.

    Attributes:
        n (int): Number of vertices.
        adjacency (tuple[frozenset[int], ...]): Neighbour set of every vertex.
    """

    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must list one neighbour set per vertex")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"vertex {u} out of range for n={self.n}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"adjacency not symmetric for {v}-{u}")

    # --- Constructors ---

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """
        Builds a graph from an edge iterable. Duplicate edges collapse.

        Args:
            n (int): Number of vertices.
            edges (Iterable[tuple[int, int]]): Vertex pairs.

        Returns:
            Graph: The new graph.
        """
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset(u for u in range(n) if u != v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        """Converts a networkx graph whose nodes are exactly 0..n-1."""
        n = graph.number_of_nodes()
        if set(graph.nodes) != set(range(n)):
            raise ValueError("networkx graph nodes must be labelled 0..n-1")
        return cls.from_edges(n, graph.edges())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    # --- Queries ---

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        return tuple(
            (u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v
        )

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (bit u set iff u is a neighbour)."""
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.adjacency)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def add_edge(self, u: int, v: int) -> Graph:
        """Returns a copy of the graph with the edge uv added."""
        return Graph.from_edges(self.n, list(self.edges) + [(u, v)])

    def check_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        """Returns the vertices as a frozenset, rejecting out-of-range ids."""
        vs = frozenset(vertices)
        for v in vs:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range for n={self.n}")
        return vs

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        """True iff the vertex set is non-empty and induces a connected subgraph."""
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if u in vs and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == vs

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def average_degree(graph: Graph) -> Fraction:
    """
    Returns the exact average degree 2|E|/|V| of a graph.

    Raises:
        ValueError: If the graph has no vertices.
    """
    if graph.n < 1:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * graph.edge_count, graph.n)


def non_adjacent(graph: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """
    True iff no edge of the graph has one end in A and the other in B.

    Overlap between A and B is ignored here; disjointness is checked separately
    by the callers that need it.
    """
    set_a = graph.check_vertices(a)
    set_b = graph.check_vertices(b)
    if len(set_a) > len(set_b):
        set_a, set_b = set_b, set_a
    return all(graph.adjacency[u].isdisjoint(set_b) for u in set_a)
