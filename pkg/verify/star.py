# verify/star.py

"""
Checks of property (star) on a candidate G0: every collection S of s pairwise
disjoint ell-sets has more than 1/2 d^-alpha C(s,2) non-adjacent pairs.

Only the exhaustive mode proves the property. The sampled and adversarial
modes can only report that no violation was found.
"""

from __future__ import annotations

import enum
import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from config import main_config
from graphs.errors import BudgetExceededError
from graphs.graph import Graph
from params.derive import ConstructionParams
from randgen.seeds import STAR_TAG, Seed

logger = logging.getLogger(__name__)

# Sub-keys under STAR_TAG
_SAMPLE_KEY = 0
_RESTART_KEY = 1


class StarMode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class StarVerdict:
    """
    Outcome of one (star) check.

    A failing verdict always carries its witness; `count` is the number of
    non-adjacent pairs of the worst collection found.
    """

    mode: StarMode
    passed: bool
    threshold: Fraction
    witness: tuple[frozenset[int], ...] | None = None
    count: int | None = None
    trials: int = 0
    coverage: int = 0
    vacuous: bool = False
    seed: dict | None = None
    budget: dict = field(default_factory=dict)

    @property
    def proves(self) -> bool:
        """Only a passing exhaustive verdict establishes the property."""
        return self.passed and self.mode is StarMode.EXHAUSTIVE

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "passed": self.passed,
            "proves": self.proves,
            "threshold": f"{self.threshold.numerator}/{self.threshold.denominator}",
            "witness": [sorted(x) for x in self.witness] if self.witness is not None else None,
            "count": self.count,
            "trials": self.trials,
            "coverage": self.coverage,
            "vacuous": self.vacuous,
            "seed": self.seed,
            "budget": self.budget,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class StarUnionBound(NamedTuple):
    """Natural logs of the quantities in the union bound over all S."""

    log_tail: float
    log_relaxed_tail: float
    log_count: float
    log_union: float
    below_half: bool


# --- Counting ---

def star_threshold(params: ConstructionParams) -> Fraction:
    """1/2 d^-alpha C(s,2) as an exact rational (d^-alpha is taken at float precision)."""
    return Fraction(params.d_neg_alpha) * math.comb(params.s, 2) / 2


def exceeds_threshold(count: int, threshold: Fraction) -> bool:
    return Fraction(count) > threshold


def _mask(vertices: Iterable[int]) -> int:
    return sum(1 << v for v in vertices)


def _reach(mask: int, g0: Graph) -> int:
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= g0.masks[v]
        mask >>= 1
        v += 1
    return out


def _count_masks(masks: Sequence[int], g0: Graph) -> int:
    reach = [_reach(m, g0) for m in masks]
    return sum(
        1
        for i, j in itertools.combinations(range(len(masks)), 2)
        if not reach[i] & masks[j]
    )


def star_pair_count(sets: Sequence[Iterable[int]], g0: Graph, ell: float | None = None) -> int:
    """
    Number of unordered pairs of sets in S with no edge of G0 between them.

    Args:
        sets (Sequence[Iterable[int]]): Pairwise disjoint non-empty vertex sets.
        g0 (Graph): The graph G0.
        ell (float | None): When given, sets larger than floor(ell) are rejected.

    Returns:
        int: The non-adjacent pair count.
    """
    frozen = [g0.check_vertices(x) for x in sets]
    cap = math.floor(ell) if ell is not None else None
    for i, x in enumerate(frozen):
        if not x:
            raise ValueError(f"set {i} is empty")
        if cap is not None and len(x) > cap:
            raise ValueError(f"set {i} has {len(x)} vertices, more than floor(ell) = {cap}")
    for i, j in itertools.combinations(range(len(frozen)), 2):
        if frozen[i] & frozen[j]:
            raise ValueError(f"sets {i} and {j} overlap in {sorted(frozen[i] & frozen[j])}")
    return _count_masks([_mask(x) for x in frozen], g0)


def ell_sets(d: int, cap: int) -> list[int]:
    """All non-empty vertex subsets of size at most `cap`, as bitmasks, smallest first."""
    return [_mask(c) for size in range(1, cap + 1) for c in itertools.combinations(range(d), size)]


def star_union_bound(params: ConstructionParams) -> StarUnionBound:
    """
    Union bound over all collections S, in log space.

    The per-S failure tail exp(-d^-alpha C(s,2)/8), its relaxation
    exp(-d^(beta-alpha)(s-1)/16), and the count (2 d^ell)^s of collections.
    The bound works when the product is below 1/2.
    """
    d, s = params.d, params.s
    log_tail = -params.d_neg_alpha * math.comb(s, 2) / 8
    log_relaxed = -(d ** (params.beta - params.alpha)) * (s - 1) / 16
    log_count = s * (math.log(2) + params.ell * math.log(d))
    log_union = log_count + log_tail
    return StarUnionBound(log_tail, log_relaxed, log_count, log_union, log_union < -math.log(2))


# --- Sampling helpers ---

def _random_collection(rng: np.random.Generator, sets: list[int], s: int, attempts: int) -> tuple[int, ...] | None:
    """s distinct pairwise-disjoint ell-sets drawn uniformly by rejection, or None."""
    for _ in range(attempts):
        picks = rng.integers(0, len(sets), size=s)
        used = 0
        ok = True
        for k in picks:
            m = sets[int(k)]
            if used & m:
                ok = False
                break
            used |= m
        if ok:
            return tuple(sorted(sets[int(k)] for k in picks))
    return None


def _best(results: Iterable[tuple[int, int, tuple[int, ...]]]) -> tuple[int, int, tuple[int, ...]] | None:
    return min(results, default=None, key=lambda item: (item[0], item[1]))


def _sample_chunk(g0: Graph, sets: list[int], s: int, seed: Seed, indices: range, attempts: int):
    """Evaluates samples `indices`; each sample has its own substream."""
    found = []
    misses = 0
    for i in indices:
        rng = seed.generator(STAR_TAG, _SAMPLE_KEY, i)
        collection = _random_collection(rng, sets, s, attempts)
        if collection is None:
            misses += 1
            continue
        found.append((_count_masks(collection, g0), i, collection))
    return found, misses


def _local_search(g0: Graph, sets: list[int], s: int, seed: Seed, restart: int, attempts: int, patience: int):
    """One adversarial restart; returns (count, restart, collection) or None."""
    rng = seed.generator(STAR_TAG, _RESTART_KEY, restart)
    current = _random_collection(rng, sets, s, attempts)
    if current is None:
        return None
    current = list(current)
    cost = _count_masks(current, g0)
    best = (cost, tuple(sorted(current)))
    full = (1 << g0.n) - 1
    idle = 0
    while idle < patience and best[0] > 0:
        j = int(rng.integers(0, s))
        others = 0
        for k, m in enumerate(current):
            if k != j:
                others |= m
        candidate = None
        if rng.random() < 0.5:
            # replace set j by a random ell-set disjoint from the rest
            for _ in range(attempts):
                m = sets[int(rng.integers(0, len(sets)))]
                if not m & others:
                    candidate = m
                    break
        else:
            # swap one vertex of set j for a vertex outside every set
            outside = full & ~(others | current[j])
            if outside:
                members = [v for v in range(g0.n) if current[j] >> v & 1]
                spare = [v for v in range(g0.n) if outside >> v & 1]
                drop = members[int(rng.integers(0, len(members)))]
                add = spare[int(rng.integers(0, len(spare)))]
                candidate = (current[j] & ~(1 << drop)) | (1 << add)
        if candidate is None or candidate == current[j]:
            idle += 1
            continue
        trial = current.copy()
        trial[j] = candidate
        trial_cost = _count_masks(trial, g0)
        if trial_cost <= cost:
            current, cost = trial, trial_cost
        if cost < best[0]:
            best = (cost, tuple(sorted(current)))
            idle = 0
        else:
            idle += 1
    return best[0], restart, best[1]


def _chunks(total: int, workers: int) -> list[range]:
    size = math.ceil(total / workers) if total else 0
    return [range(i, min(i + size, total)) for i in range(0, total, size)] if size else []


def _restart_chunk(g0, sets, s, seed, indices, attempts, patience):
    out = []
    for i in indices:
        result = _local_search(g0, sets, s, seed, i, attempts, patience)
        if result is not None:
            out.append(result)
    return out


# --- Modes ---

def _exhaustive(g0: Graph, sets: list[int], s: int, budget: int):
    work = math.comb(len(sets), s)
    if work > budget:
        raise BudgetExceededError("exhaustive (star) check", work, budget)
    reach = [_reach(m, g0) for m in sets]
    best: list = [None]
    visited = [0]
    chosen: list[int] = []

    def extend(start: int, used: int, count: int) -> None:
        if len(chosen) == s:
            visited[0] += 1
            if best[0] is None or count < best[0][0]:
                best[0] = (count, tuple(sets[k] for k in chosen))
            return
        for k in range(start, len(sets)):
            m = sets[k]
            if used & m:
                continue
            added = sum(1 for c in chosen if not reach[c] & m)
            chosen.append(k)
            extend(k + 1, used | m, count + added)
            chosen.pop()

    extend(0, 0, 0)
    return best[0], visited[0], work


def _as_sets(collection: Sequence[int], d: int) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(v for v in range(d) if m >> v & 1) for m in collection)


def verify_star(
    g0: Graph,
    params: ConstructionParams,
    mode: StarMode | str = StarMode.SAMPLED,
    seed: Seed | None = None,
    budget: int | None = None,
    samples: int | None = None,
    restarts: int | None = None,
    patience: int | None = None,
    workers: int = 1,
) -> StarVerdict:
    """
    Checks property (star) for G0 in the requested mode.

    Args:
        g0 (Graph): Candidate with exactly d vertices.
        params (ConstructionParams): Supplies d, ell, s and alpha.
        mode (StarMode | str): exhaustive, sampled or adversarial.
        seed (Seed | None): Random stream for the sampled and adversarial modes.
        budget (int | None): Work cap for exhaustive mode (collections to visit).
        samples (int | None): Number of random collections in sampled mode.
        restarts (int | None): Local-search restarts in adversarial mode.
        patience (int | None): Non-improving moves before a restart ends.
        workers (int): Processes for the sampled and adversarial modes.

    Returns:
        StarVerdict: The verdict; failing verdicts carry a witness.

    Raises:
        BudgetExceededError: In exhaustive mode when the work estimate is over budget.
    """
    mode = StarMode(mode)
    if g0.n != params.d:
        raise ValueError(f"G0 must have d = {params.d} vertices, got {g0.n}")
    seed = seed or Seed(0)
    threshold = star_threshold(params)
    s, cap = params.s, params.ell_cap

    if cap < 1 or s > g0.n:
        logger.info(f"  -> (star) holds vacuously: floor(ell)={cap}, s={s}, d={g0.n}")
        return StarVerdict(mode, True, threshold, vacuous=True, seed=seed.to_dict())

    sets = ell_sets(g0.n, cap)
    attempts = main_config.STAR_REJECTION_ATTEMPTS

    if mode is StarMode.EXHAUSTIVE:
        budget = budget or main_config.ENUMERATION_BUDGET
        best, visited, work = _exhaustive(g0, sets, s, budget)
        budget_info = {"work_estimate": work, "budget": budget}
        coverage = visited
    elif mode is StarMode.SAMPLED:
        samples = samples or main_config.STAR_SAMPLES
        chunks = _chunks(samples, max(1, workers))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_sample_chunk, *zip(*[(g0, sets, s, seed, c, attempts) for c in chunks])))
        else:
            parts = [_sample_chunk(g0, sets, s, seed, c, attempts) for c in chunks]
        found = [item for part, _ in parts for item in part]
        misses = sum(m for _, m in parts)
        merged = _best(found)
        best = (merged[0], merged[2]) if merged else None
        visited = len(found)
        coverage = len({item[2] for item in found})
        budget_info = {"samples": samples, "rejected_samples": misses}
    else:
        restarts = restarts or main_config.STAR_RESTARTS
        patience = patience or main_config.STAR_PATIENCE
        chunks = _chunks(restarts, max(1, workers))
        args = [(g0, sets, s, seed, c, attempts, patience) for c in chunks]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_restart_chunk, *zip(*args)))
        else:
            parts = [_restart_chunk(*a) for a in args]
        found = [item for part in parts for item in part]
        merged = _best(found)
        best = (merged[0], merged[2]) if merged else None
        visited = len(found)
        coverage = len({item[2] for item in found})
        budget_info = {"restarts": restarts, "patience": patience}

    if best is None:
        # no collection of s disjoint ell-sets was drawn
        return StarVerdict(
            mode, True, threshold, trials=visited, coverage=coverage,
            seed=seed.to_dict(), budget=budget_info,
        )

    count, collection = best
    witness = _as_sets(collection, g0.n)
    passed = exceeds_threshold(count, threshold)
    verdict = StarVerdict(
        mode=mode,
        passed=passed,
        threshold=threshold,
        witness=witness,
        count=count,
        trials=visited,
        coverage=coverage,
        seed=seed.to_dict(),
        budget=budget_info,
    )
    logger.info(
        f"  -> (star) {mode.value}: min non-adjacent pairs {count} vs threshold {float(threshold):.4g} "
        f"over {visited} collections -> {'pass' if passed else 'FAIL'}"
    )
    return verdict
