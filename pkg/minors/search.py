# minors/search.py

"""
Exact minor containment by branch and bound.

Vertices of H are placed one at a time (decreasing degree, ties by label).
Each placement picks a connected set of still-free host vertices that touches
the branch sets of all already-placed H-neighbours; candidate sets are listed
smallest first. Host vertices are ranked by decreasing degree, ties by label,
and all set arithmetic is done on integer bitmasks over ranks.

Pruning after each placement:
  - enough free vertices remain for the unplaced H vertices;
  - enough host edges remain to witness the not-yet-witnessed H edges
    (distinct H edges need distinct host edges);
  - every unplaced H vertex with placed neighbours has a component of the
    free subgraph touching all of their branch sets.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Iterator

from blobbing.blobs import MinorModel
from config import main_config
from graphs.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = main_config.DEFAULT_NODE_LIMIT
    time_limit: float = main_config.DEFAULT_TIME_LIMIT

    def __post_init__(self):
        if self.node_limit < 1 or self.time_limit <= 0:
            raise ValueError(f"budget limits must be positive, got {self}")


class Outcome(str, enum.Enum):
    MODEL = "model"
    NO_MINOR = "no_minor"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    model: MinorModel | None = None
    nodes: int = 0
    elapsed: float = 0.0
    reason: str = field(default="", compare=False)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "model": [sorted(x) for x in self.model.branch_sets] if self.model else None,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
            "reason": self.reason,
        }


class _BudgetHit(Exception):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _connected_sets(root: int, allowed: int, size: int, adj: list[int]) -> Iterator[int]:
    """
    Connected vertex sets of exactly `size` vertices that contain `root` and
    lie inside `allowed`, each produced once (exclusive-neighbourhood growth).
    """
    root_bit = 1 << root
    if size == 1:
        yield root_bit
        return
    yield from _grow(root_bit, adj[root] & allowed, root_bit | adj[root], size - 1, allowed, adj)


def _grow(sub: int, ext: int, closed: int, need: int, allowed: int, adj: list[int]) -> Iterator[int]:
    while ext:
        low = ext & -ext
        ext ^= low
        if need == 1:
            yield sub | low
            continue
        w = low.bit_length() - 1
        grown = ext | (adj[w] & allowed & ~closed)
        yield from _grow(sub | low, grown, closed | adj[w], need - 1, allowed, adj)


class _Search:
    def __init__(self, h: Graph, g: Graph, budget: SearchBudget):
        self.h = h
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.started = time.monotonic()

        self.h_order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
        self.position = {v: k for k, v in enumerate(self.h_order)}
        # placed_neighbours[k]: positions < k adjacent to the vertex at position k
        self.placed_neighbours = [
            sorted(self.position[u] for u in h.neighbours(v) if self.position[u] < k)
            for k, v in enumerate(self.h_order)
        ]
        # open_edges[k]: H edges with an endpoint at position > k
        self.open_edges = [
            sum(1 for u, v in h.edges if max(self.position[u], self.position[v]) > k)
            for k in range(h.n)
        ]

        self.g_order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        rank = {v: i for i, v in enumerate(self.g_order)}
        self.adj = [sum(1 << rank[u] for u in g.neighbours(v)) for v in self.g_order]

        self.branch: list[int] = [0] * h.n
        self.touch: list[int] = [0] * h.n

    # --- Budget ---

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise _BudgetHit("node limit reached")
        if time.monotonic() - self.started > self.budget.time_limit:
            raise _BudgetHit("time limit reached")

    # --- Helpers ---

    def _neighbourhood(self, mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= self.adj[v]
        return out

    def _components(self, free: int) -> list[int]:
        comps = []
        rest = free
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                frontier = self._neighbourhood(frontier) & free & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def _feasible(self, k: int, free: int, placed: int) -> bool:
        remaining = self.h.n - k - 1
        if free.bit_count() < remaining:
            return False
        if remaining == 0:
            return True

        inside = 0
        across = 0
        for v in _bits(free):
            inside += (self.adj[v] & free).bit_count()
            across += (self.adj[v] & placed).bit_count()
        if self.open_edges[k] > inside // 2 + across:
            return False

        comps = None
        for j in range(k + 1, self.h.n):
            needs = [self.touch[i] for i in self.placed_neighbours[j] if i <= k]
            if not needs:
                continue
            if comps is None:
                comps = self._components(free)
            if not any(all(c & n for n in needs) for c in comps):
                return False
        return True

    def _candidates(self, k: int, free: int) -> Iterator[int]:
        needs = [self.touch[i] for i in self.placed_neighbours[k]]
        max_size = free.bit_count() - (self.h.n - k - 1)
        if needs:
            roots = min((n & free for n in needs), key=lambda m: m.bit_count())
        else:
            roots = free
        if not roots:
            return
        root_list = list(_bits(roots))
        for size in range(1, max_size + 1):
            excluded = 0
            for root in root_list:
                allowed = free & ~excluded
                for candidate in _connected_sets(root, allowed, size, self.adj):
                    reach = self._neighbourhood(candidate)
                    if all(reach & self.branch[i] for i in self.placed_neighbours[k]):
                        yield candidate
                excluded |= 1 << root

    # --- Search ---

    def _place(self, k: int, free: int, placed: int) -> bool:
        if k == self.h.n:
            return True
        for candidate in self._candidates(k, free):
            self._tick()
            self.branch[k] = candidate
            self.touch[k] = self._neighbourhood(candidate)
            rest = free & ~candidate
            if self._feasible(k, rest, placed | candidate) and self._place(k + 1, rest, placed | candidate):
                return True
        self.branch[k] = 0
        self.touch[k] = 0
        return False

    def run(self) -> SearchResult:
        full = (1 << self.g.n) - 1
        try:
            found = self._place(0, full, 0)
        except _BudgetHit as e:
            return SearchResult(Outcome.INCONCLUSIVE, None, self.nodes, self._elapsed(), str(e))
        if not found:
            return SearchResult(Outcome.NO_MINOR, None, self.nodes, self._elapsed(), "search exhausted")
        branch_sets = [None] * self.h.n
        for k, v in enumerate(self.h_order):
            branch_sets[v] = frozenset(self.g_order[i] for i in _bits(self.branch[k]))
        return SearchResult(Outcome.MODEL, MinorModel(tuple(branch_sets)), self.nodes, self._elapsed())

    def _elapsed(self) -> float:
        return time.monotonic() - self.started


def find_minor(h: Graph, g: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """
    Decides whether H is a minor of G.

    Args:
        h (Graph): The pattern graph, with at least one vertex.
        g (Graph): The host graph.
        budget (SearchBudget | None): Node and time limits; defaults from main_config.

    Returns:
        SearchResult: MODEL with a certificate, NO_MINOR after an exhaustive
        search, or INCONCLUSIVE with the nodes and time consumed.
    """
    if h.n < 1:
        raise ValueError("H must have at least one vertex")
    budget = budget or SearchBudget()
    if h.n > g.n:
        return SearchResult(Outcome.NO_MINOR, reason=f"|V(H)| = {h.n} > |V(G)| = {g.n}")
    if h.edge_count > g.edge_count:
        return SearchResult(Outcome.NO_MINOR, reason=f"|E(H)| = {h.edge_count} > |E(G)| = {g.edge_count}")
    result = _Search(h, g, budget).run()
    logger.debug(
        f"find_minor({h!r}, {g!r}) -> {result.outcome.value} after {result.nodes} nodes"
    )
    return result
