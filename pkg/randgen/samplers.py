# randgen/samplers.py

import logging
import math

import numpy as np

from graphs.graph import Graph
from randgen.seeds import Seed, as_generator

logger = logging.getLogger(__name__)


def _lexicographic_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # triu_indices walks rows in order, i.e. (0,1), (0,2), ..., (1,2), ...
    return np.triu_indices(n, k=1)


def sample_gnp(n: int, p: float, seed: Seed | np.random.Generator) -> Graph:
    """
    Samples G(n, p): every pair is an edge independently with probability p.

    One uniform draw is consumed per pair, in lexicographic pair order; the
    pair is an edge iff its draw is below p.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = as_generator(seed)
    rows, cols = _lexicographic_pairs(n)
    draws = rng.random(rows.size)
    chosen = draws < p
    return Graph.from_edges(n, zip(rows[chosen].tolist(), cols[chosen].tolist()))


def sample_gnm(t: int, m: int, seed: Seed | np.random.Generator) -> Graph:
    """
    Samples G(t, m), uniform over all graphs on t vertices with m edges.

    A partial Fisher-Yates shuffle over the lexicographic edge list picks the
    m edges.
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    total = math.comb(t, 2)
    if not 0 <= m <= total:
        raise ValueError(f"m must lie in [0, C({t},2) = {total}], got {m}")
    rng = as_generator(seed)
    rows, cols = _lexicographic_pairs(t)
    order = np.arange(total)
    for i in range(m):
        j = int(rng.integers(i, total))
        order[i], order[j] = order[j], order[i]
    picked = order[:m]
    return Graph.from_edges(t, zip(rows[picked].tolist(), cols[picked].tolist()))


def h_edge_count(t: int, d: int) -> int:
    """floor(t*d/2): the edge count of a graph with t vertices and average degree d."""
    return (t * d) // 2


def sample_h(t: int, d: int, seed: Seed | np.random.Generator) -> Graph:
    """Samples H from G(t, floor(td/2)); requires t >= d + 1."""
    if d < 1 or t < d + 1:
        raise ValueError(f"need t >= d + 1 with d >= 1, got t={t}, d={d}")
    m = h_edge_count(t, d)
    if m > math.comb(t, 2):
        raise AssertionError(f"floor(td/2) = {m} exceeds C({t},2)")
    if (t * d) % 2:
        logger.debug(f"t*d = {t * d} is odd; H gets floor(td/2) = {m} edges")
    return sample_gnm(t, m, seed)
