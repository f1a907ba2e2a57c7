# blobbing/blobs.py

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from graphs.blowup import BlowupGraph
from graphs.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Blobbing:
    """
    An ordered sequence of t blobs (non-empty subsets of V(G0)).

    The total blob size is at most `capacity` (= |V(G)| = d*r) and every
    vertex of G0 lies in at most r blobs. Construction enforces both.
    """

    blobs: tuple[frozenset[int], ...]
    d: int
    capacity: int
    r: int

    def __post_init__(self):
        for i, blob in enumerate(self.blobs):
            if not blob:
                raise ValueError(f"blob {i} is empty")
            for x in blob:
                if not 0 <= x < self.d:
                    raise ValueError(f"blob {i} contains {x}, outside V(G0) of size {self.d}")
        total = sum(len(b) for b in self.blobs)
        if total > self.capacity:
            raise ValueError(f"total blob size {total} exceeds capacity {self.capacity}")
        multiplicity = Counter(x for blob in self.blobs for x in blob)
        worst = max(multiplicity.values(), default=0)
        if worst > self.r:
            raise ValueError(f"a vertex of G0 lies in {worst} blobs, more than r={self.r}")

    @classmethod
    def of(cls, blobs: Iterable[Iterable[int]], d: int, capacity: int, r: int) -> Blobbing:
        return cls(tuple(frozenset(b) for b in blobs), d, capacity, r)

    @property
    def t(self) -> int:
        return len(self.blobs)

    def masks(self) -> list[int]:
        return [sum(1 << x for x in blob) for blob in self.blobs]


@dataclass(frozen=True)
class MinorModel:
    """Branch set X_v of every vertex v of H, indexed by v."""

    branch_sets: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, branch_sets: Iterable[Iterable[int]]) -> MinorModel:
        return cls(tuple(frozenset(x) for x in branch_sets))

    def __len__(self) -> int:
        return len(self.branch_sets)


def project(model: MinorModel, host: BlowupGraph) -> Blobbing:
    """
    Projects every branch set X_v of a minor model in the blowup to
    B_v = {x in V(G0) : X_v meets I_x}.

    Args:
        model (MinorModel): Branch sets living in host.graph.
        host (BlowupGraph): The blowup G of G0.

    Returns:
        Blobbing: The projection. Its constructor re-checks the capacity and
        multiplicity invariants.

    Raises:
        ValueError: If a branch set leaves V(G) or two branch sets overlap.
    """
    seen: set[int] = set()
    blobs = []
    for v, branch in enumerate(model.branch_sets):
        host.graph.check_vertices(branch)
        if not seen.isdisjoint(branch):
            raise ValueError(f"branch set {v} overlaps an earlier branch set")
        seen |= branch
        blobs.append(frozenset(host.class_of(u) for u in branch))
    return Blobbing(tuple(blobs), host.d, host.graph.n, host.r)


def _neighbourhood_masks(masks: Sequence[int], g0: Graph) -> list[int]:
    out = []
    for mask in masks:
        nbr = 0
        x = mask
        while x:
            low = x & -x
            nbr |= g0.masks[low.bit_length() - 1]
            x ^= low
        out.append(nbr)
    return out


def good_pairs(blobbing: Blobbing, g0: Graph, ell: float) -> list[tuple[int, int]]:
    """
    Lists the unordered index pairs (i, j), i < j, whose blobs are disjoint,
    non-adjacent in G0, and both of size at most floor(ell).
    """
    if blobbing.d != g0.n:
        raise ValueError(f"blobbing lives on {blobbing.d} vertices but G0 has {g0.n}")
    cap = math.floor(ell)
    masks = blobbing.masks()
    nbrs = _neighbourhood_masks(masks, g0)
    small = [i for i, blob in enumerate(blobbing.blobs) if len(blob) <= cap]
    pairs = []
    for a, i in enumerate(small):
        for j in small[a + 1:]:
            if masks[i] & masks[j] == 0 and nbrs[i] & masks[j] == 0:
                pairs.append((i, j))
    return pairs


def count_good_pairs(blobbing: Blobbing, g0: Graph, ell: float) -> int:
    return len(good_pairs(blobbing, g0, ell))


def is_h_compatible(blobbing: Blobbing, g0: Graph, h: Graph, ell: float | None = None) -> bool:
    """
    True iff for every edge ij of H the blobs B_i and B_j intersect or have
    an edge of G0 between them.

    The answer does not depend on `ell`; a compatible blobbing never places an
    edge of H on a good pair for any ell. It is accepted so callers can pass
    the same arguments as to count_good_pairs.
    """
    if h.n != blobbing.t:
        raise ValueError(f"H has {h.n} vertices but the blobbing has {blobbing.t} blobs")
    if blobbing.d != g0.n:
        raise ValueError(f"blobbing lives on {blobbing.d} vertices but G0 has {g0.n}")
    masks = blobbing.masks()
    nbrs = _neighbourhood_masks(masks, g0)
    for i, j in h.edges:
        if masks[i] & masks[j] == 0 and nbrs[i] & masks[j] == 0:
            logger.debug(f"H-edge ({i}, {j}) lands on non-touching blobs (ell={ell})")
            return False
    return True


def _format_sets(sets: Iterable[frozenset[int]]) -> str:
    return "".join(" ".join(map(str, sorted(s))) + "\n" for s in sets)


def format_blobbing(blobbing: Blobbing) -> str:
    """t lines of space-separated, sorted vertex ids."""
    return _format_sets(blobbing.blobs)


def format_model(model: MinorModel) -> str:
    """One line per vertex of H: the sorted vertex ids of its branch set."""
    return _format_sets(model.branch_sets)
