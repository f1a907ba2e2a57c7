# verify/chernoff.py

"""Lower-tail Chernoff bound and a seeded Monte-Carlo check of it."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from randgen.seeds import CHERNOFF_TAG, Seed


class TailCheck(NamedTuple):
    frequency: float
    standard_error: float
    bound: float
    samples: int

    @property
    def respects_bound(self) -> bool:
        """Frequency stays within three standard errors above the bound."""
        return self.frequency <= self.bound + 3 * self.standard_error


def chernoff_lower_tail(n: int, p: float, delta: float) -> float:
    """
    Bound on P(X <= (1 - delta) p n) for X ~ Binomial(n, p).

    Args:
        n (int): Number of trials.
        p (float): Success probability in (0, 1].
        delta (float): Relative deviation in (0, 1).

    Returns:
        float: exp(-delta^2 p n / 2).
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return math.exp(-(delta**2) * p * n / 2)


def empirical_lower_tail(n: int, p: float, delta: float, samples: int, seed: Seed) -> TailCheck:
    """Frequency of X <= (1 - delta) p n over `samples` seeded binomial draws."""
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    bound = chernoff_lower_tail(n, p, delta)
    rng = seed.generator(CHERNOFF_TAG)
    draws = rng.binomial(n, p, size=samples)
    frequency = float(np.mean(draws <= (1 - delta) * p * n))
    standard_error = math.sqrt(frequency * (1 - frequency) / samples)
    return TailCheck(frequency, standard_error, bound, samples)
