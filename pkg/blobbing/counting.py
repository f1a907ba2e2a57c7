# blobbing/counting.py

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Iterator, NamedTuple

from config import main_config
from graphs.errors import BudgetExceededError
from params.derive import ConstructionParams

logger = logging.getLogger(__name__)


def g_count(d: int, t: int, n: int) -> int:
    """
    Number of t-tuples of non-empty subsets of {1..d} with total size <= n.

    Computed exactly by the recurrence
    g(d, t, n) = sum_{i=1}^{d} C(d, i) g(d, t-1, n-i), g(d, 0, n) = 1 for n >= 0.

    Returns:
        int: The count; 0 whenever n < t.
    """
    if d < 1 or t < 0:
        raise ValueError(f"need d >= 1 and t >= 0, got d={d}, t={t}")
    if n < t:
        return 0
    binom = [math.comb(d, i) for i in range(d + 1)]
    # row[m] = g(d, k, m) for the current k
    row = [1] * (n + 1)
    for _ in range(t):
        row = [
            sum(binom[i] * row[m - i] for i in range(1, min(d, m) + 1))
            for m in range(n + 1)
        ]
    return row[n]


def g_count_bound(d: int, n: int) -> int:
    """The (4d)^n bound on g(d, t, n)."""
    return (4 * d) ** n


def blob_series_margin(d: int) -> float:
    """sum_{i=1}^{d} (e/(4i))^i, which stays below 1 for every d."""
    return sum((math.e / (4 * i)) ** i for i in range(1, d + 1))


def good_pair_threshold(params: ConstructionParams) -> float:
    """eps^2/400 * d^-alpha * t^2, the good-pair lower bound for every blobbing."""
    return params.epsilon**2 / 400 * params.d_neg_alpha * params.t**2


class BlobbingEnumeration(NamedTuple):
    count: int
    stream: Iterator[tuple[frozenset[int], ...]] | None


def enumeration_work(d: int, t: int) -> int:
    return d**t * 2 ** (d * t)


def _subsets(d: int) -> list[tuple[int, tuple[int, ...]]]:
    out = []
    for mask in range(1, 1 << d):
        out.append((mask, tuple(x for x in range(d) if mask >> x & 1)))
    return out


def _stream(d: int, t: int, capacity: int, r: int) -> Iterator[tuple[frozenset[int], ...]]:
    subsets = _subsets(d)
    multiplicity = [0] * d
    chosen: list[frozenset[int]] = []

    def extend(remaining: int) -> Iterator[tuple[frozenset[int], ...]]:
        if len(chosen) == t:
            yield tuple(chosen)
            return
        reserve = t - len(chosen) - 1
        for _, members in subsets:
            if len(members) > remaining - reserve:
                continue
            if any(multiplicity[x] >= r for x in members):
                continue
            for x in members:
                multiplicity[x] += 1
            chosen.append(frozenset(members))
            yield from extend(remaining - len(members))
            chosen.pop()
            for x in members:
                multiplicity[x] -= 1

    yield from extend(capacity)


def enumerate_blobbings(
    d: int,
    t: int,
    capacity: int,
    r: int,
    stream: bool = False,
    budget: int | None = None,
) -> BlobbingEnumeration:
    """
    Counts blobbings exhaustively, including the multiplicity-at-most-r rule.

    Tuples are produced in lexicographic order of (blob index, subset bitmask).

    Args:
        d (int): |V(G0)|.
        t (int): Number of blobs.
        capacity (int): Upper bound on the total blob size.
        r (int): Maximum number of blobs containing any one vertex.
        stream (bool): Also return a lazy iterator over the blobbings.
        budget (int | None): Work budget; defaults to main_config.ENUMERATION_BUDGET.

    Raises:
        BudgetExceededError: If d^t * 2^(dt) exceeds the budget.
    """
    if d < 1 or t < 1 or r < 1:
        raise ValueError(f"need d, t, r >= 1, got d={d}, t={t}, r={r}")
    budget = main_config.ENUMERATION_BUDGET if budget is None else budget
    work = enumeration_work(d, t)
    if work > budget:
        raise BudgetExceededError("blobbing enumeration", work, budget)

    subsets = _subsets(d)

    @lru_cache(maxsize=None)
    def count(i: int, remaining: int, multiplicity: tuple[int, ...]) -> int:
        if i == t:
            return 1
        reserve = t - i - 1
        total = 0
        for _, members in subsets:
            if len(members) > remaining - reserve:
                continue
            if any(multiplicity[x] >= r for x in members):
                continue
            bumped = list(multiplicity)
            for x in members:
                bumped[x] += 1
            total += count(i + 1, remaining - len(members), tuple(bumped))
        return total

    total = count(0, capacity, (0,) * d) if capacity >= t else 0
    logger.debug(f"Enumerated {total} blobbings for d={d}, t={t}, capacity={capacity}, r={r}")
    return BlobbingEnumeration(total, _stream(d, t, capacity, r) if stream else None)
