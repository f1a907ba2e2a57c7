# blobbing/structure.py

"""
Good-pair structure of a concrete blobbing.

Walks the counting argument behind the good-pair lower bound on one blobbing:
small blobs X, the low-degree part Y of X, a maximal pairwise-disjoint Z
inside Y that is sparse in good pairs, and the blobs Z' of Y missing Z.
At desk scale the argument's inequalities usually fail; this module only
reports the sets and counts, plus the fewest good pairs over all (or
sampled) blobbings next to the threshold the argument promises.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from blobbing.blobs import Blobbing, count_good_pairs, good_pairs
from blobbing.counting import enumerate_blobbings, good_pair_threshold
from config import main_config
from graphs.graph import Graph
from params.derive import ConstructionParams
from randgen.seeds import BLOBBING_TAG, Seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoodPairStructure:
    small: tuple[int, ...]
    low: tuple[int, ...]
    sparse_core: tuple[int, ...]
    outside_core: tuple[int, ...]
    total_good_pairs: int
    threshold: float

    @property
    def meets_threshold(self) -> bool:
        return self.total_good_pairs >= self.threshold

    def to_dict(self) -> dict:
        return {
            "small": list(self.small),
            "low": list(self.low),
            "sparse_core": list(self.sparse_core),
            "outside_core": list(self.outside_core),
            "total_good_pairs": self.total_good_pairs,
            "threshold": self.threshold,
            "meets_threshold": self.meets_threshold,
        }


def good_pair_structure(blobbing: Blobbing, g0: Graph, params: ConstructionParams) -> GoodPairStructure:
    pairs = good_pairs(blobbing, g0, params.ell)
    partners: dict[int, set[int]] = {i: set() for i in range(blobbing.t)}
    for i, j in pairs:
        partners[i].add(j)
        partners[j].add(i)

    cap = params.ell_cap
    small = [i for i, blob in enumerate(blobbing.blobs) if len(blob) <= cap]
    low_limit = params.epsilon / 20 * params.d_neg_alpha * params.t
    low = [i for i in small if len(partners[i]) <= low_limit]

    # Grow Z greedily until no blob of Y can join; repeated passes make it maximal.
    core: list[int] = []
    used: frozenset[int] = frozenset()
    inner_pairs = 0
    changed = True
    while changed:
        changed = False
        for i in low:
            if i in core or not used.isdisjoint(blobbing.blobs[i]):
                continue
            added = sum(1 for j in core if j in partners[i])
            size = len(core) + 1
            if inner_pairs + added <= 0.5 * params.d_neg_alpha * math.comb(size, 2):
                core.append(i)
                used = used | blobbing.blobs[i]
                inner_pairs += added
                changed = True

    outside = [i for i in low if i not in core and used.isdisjoint(blobbing.blobs[i])]
    return GoodPairStructure(
        small=tuple(small),
        low=tuple(low),
        sparse_core=tuple(core),
        outside_core=tuple(outside),
        total_good_pairs=len(pairs),
        threshold=good_pair_threshold(params),
    )


class GoodPairMinimum(NamedTuple):
    """Fewest good pairs seen over the examined blobbings, with the blobbing attaining it."""

    minimum: int
    witness: Blobbing | None
    threshold: float
    examined: int
    exhaustive: bool

    @property
    def meets_threshold(self) -> bool:
        return self.minimum >= self.threshold

    def to_dict(self) -> dict:
        return {
            "minimum": self.minimum,
            "witness": [sorted(b) for b in self.witness.blobs] if self.witness is not None else None,
            "threshold": self.threshold,
            "examined": self.examined,
            "exhaustive": self.exhaustive,
            "meets_threshold": self.meets_threshold,
        }


def _sample_blobbing(rng: np.random.Generator, d: int, t: int, capacity: int, r: int) -> tuple[frozenset[int], ...]:
    multiplicity = np.zeros(d, dtype=np.int64)
    remaining = capacity
    blobs = []
    for i in range(t):
        open_vertices = np.flatnonzero(multiplicity < r)
        largest = min(len(open_vertices), remaining - (t - i - 1))
        size = int(rng.integers(1, largest + 1))
        members = rng.choice(open_vertices, size=size, replace=False)
        multiplicity[members] += 1
        remaining -= size
        blobs.append(frozenset(int(x) for x in members))
    return tuple(blobs)


def _sampled(rng: np.random.Generator, d: int, t: int, capacity: int, r: int, samples: int) -> Iterator[tuple[frozenset[int], ...]]:
    for _ in range(samples):
        yield _sample_blobbing(rng, d, t, capacity, r)


def min_good_pairs(
    g0: Graph,
    params: ConstructionParams,
    mode: str = "exhaustive",
    seed: Seed | None = None,
    samples: int | None = None,
    budget: int | None = None,
) -> GoodPairMinimum:
    """
    Smallest number of good pairs over all blobbings of G0 with t blobs,
    capacity d*r and multiplicity at most r.

    Args:
        g0 (Graph): The base graph; must have params.d vertices.
        params (ConstructionParams): Supplies t, r, ell and the threshold.
        mode (str): "exhaustive" walks the lexicographic enumeration stream,
            "sampled" draws random blobbings and only bounds the minimum from above.
        seed (Seed | None): Required in sampled mode.
        samples (int | None): Sampled blobbings; defaults to main_config.GOOD_PAIR_SAMPLES.
        budget (int | None): Work budget for exhaustive mode.

    Returns:
        GoodPairMinimum: The minimum, the first blobbing attaining it, and
        the good-pair threshold, reported side by side.

    Raises:
        BudgetExceededError: If exhaustive enumeration is over budget.
    """
    if g0.n != params.d:
        raise ValueError(f"G0 has {g0.n} vertices but d={params.d}")
    d, t, r, capacity = params.d, params.t, params.r, params.capacity
    threshold = good_pair_threshold(params)
    if capacity < t:
        logger.warning(f"⚠️ capacity {capacity} is below t={t}; no blobbing exists")
        return GoodPairMinimum(0, None, threshold, 0, mode == "exhaustive")

    if mode == "exhaustive":
        stream = enumerate_blobbings(d, t, capacity, r, stream=True, budget=budget).stream
    elif mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs a seed")
        samples = main_config.GOOD_PAIR_SAMPLES if samples is None else samples
        if samples < 1:
            raise ValueError(f"samples must be positive, got {samples}")
        stream = _sampled(seed.generator(BLOBBING_TAG), d, t, capacity, r, samples)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'sampled'")

    best: int | None = None
    witness = None
    examined = 0
    for blobs in stream:
        examined += 1
        blobbing = Blobbing(blobs, d, capacity, r)
        count = count_good_pairs(blobbing, g0, params.ell)
        if best is None or count < best:
            best, witness = count, blobbing
            if best == 0:
                break

    result = GoodPairMinimum(best if best is not None else 0, witness, threshold, examined, mode == "exhaustive")
    logger.info(
        f"  -> min good pairs over {examined} {mode} blobbings: {result.minimum} (threshold {threshold:.4g})"
    )
    return result
