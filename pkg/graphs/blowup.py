# graphs/blowup.py

from __future__ import annotations

import logging
from dataclasses import dataclass

from graphs.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlowupGraph:
    """
    A base graph G0 with every vertex x replaced by an independent class I_x
    of size r, and every edge xy replaced by a complete bipartite graph
    between I_x and I_y.

    Class x occupies the vertices x*r .. x*r + r - 1 of `graph`.
    """

    base: Graph
    r: int
    graph: Graph

    def class_of(self, v: int) -> int:
        """Returns the base vertex x with v in I_x."""
        if not 0 <= v < self.graph.n:
            raise ValueError(f"vertex {v} out of range for n={self.graph.n}")
        return v // self.r

    def members(self, x: int) -> range:
        """Returns the class I_x."""
        if not 0 <= x < self.base.n:
            raise ValueError(f"base vertex {x} out of range for d={self.base.n}")
        return range(x * self.r, (x + 1) * self.r)

    @property
    def d(self) -> int:
        return self.base.n


def blowup(base: Graph, r: int) -> BlowupGraph:
    """
    Replaces every vertex of `base` by an independent set of size r.

    Args:
        base (Graph): The graph G0.
        r (int): Class size, at least 1.

    Returns:
        BlowupGraph: The blowup with d*r vertices and |E(base)|*r^2 edges.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"class size r must be a positive integer, got {r!r}")

    n = base.n * r
    adjacency = []
    for v in range(n):
        x = v // r
        adjacency.append(
            frozenset(u for y in base.adjacency[x] for u in range(y * r, (y + 1) * r))
        )
    graph = Graph(n, tuple(adjacency))
    logger.debug(f"Blew up {base!r} with r={r} into {graph!r}")
    return BlowupGraph(base=base, r=r, graph=graph)
