# harness/bounds.py

"""
Analytic probability bounds from the blobbing argument, evaluated at
concrete parameters. Nothing here claims the asymptotic statement holds at
desk scale; every quantity is reported as computed.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, NamedTuple

import pandas as pd

from blobbing.counting import good_pair_threshold
from config import main_config
from params.derive import ConstructionParams

logger = logging.getLogger(__name__)


class CompatibilityBound(NamedTuple):
    exact_ratio: Fraction
    relaxed_bound: float
    exponential_bound: float
    chain_applies: bool
    chain_holds: bool | None


class UnionBound(NamedTuple):
    log_bound: float
    bound: float
    log_c_t: float
    below_c_t: bool

    def to_dict(self) -> dict:
        return self._asdict()


def _per_edge_loss(params: ConstructionParams) -> float:
    return params.epsilon**2 * params.d_neg_alpha / 200


def compatibility_probability_bound(params: ConstructionParams, m: int, q: int) -> CompatibilityBound:
    """
    Probability that a blobbing with q good pairs is H-compatible for H ~ G(t, m).

    Args:
        params (ConstructionParams): Supplies t, epsilon and d^-alpha.
        m (int): Edge count of H.
        q (int): Lower bound on the number of good pairs.

    Returns:
        CompatibilityBound: The exact ratio C(N - q, m) / C(N, m) with N = C(t, 2),
        the relaxed bound (1 - eps^2 d^-alpha / 200)^m, its exponential relaxation,
        whether q meets the good-pair threshold, and (if it does) whether the
        chain exact <= relaxed <= exponential holds.
    """
    pairs = math.comb(params.t, 2)
    if not 0 <= q <= pairs:
        raise ValueError(f"q must lie in [0, C(t,2) = {pairs}], got {q}")
    if not 0 <= m <= pairs:
        raise ValueError(f"m must lie in [0, C(t,2) = {pairs}], got {m}")

    exact = Fraction(math.comb(pairs - q, m), math.comb(pairs, m))
    loss = _per_edge_loss(params)
    relaxed = (1 - loss) ** m
    exponential = math.exp(-loss * m)
    applies = q >= good_pair_threshold(params)

    holds = None
    if applies:
        relaxed_exact = (1 - Fraction(loss)) ** m
        holds = exact <= relaxed_exact and m * math.log1p(-loss) <= -loss * m
        if not holds:
            logger.warning(f"Compatibility chain fails at t={params.t}, m={m}, q={q}")
    return CompatibilityBound(exact, relaxed, exponential, applies, holds)


def log_union_bound(params: ConstructionParams) -> float:
    """t ell ln(4d) - eps^2 t d^(1-alpha) / 400."""
    eps, d, t = params.epsilon, params.d, params.t
    return t * params.ell * math.log(4 * d) - eps**2 * t * d ** (1 - params.alpha) / 400


def union_bound_estimate(params: ConstructionParams, c: float | None = None) -> UnionBound:
    """
    The union bound (4d)^(t ell) exp(-eps^2 t d^(1-alpha) / 400) over all
    blobbings, compared against c^t. Values too large for a float are
    reported as inf, never clipped.
    """
    c = c if c is not None else main_config.DEFAULT_C
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    log_bound = log_union_bound(params)
    try:
        bound = math.exp(log_bound)
    except OverflowError:
        bound = math.inf
    log_c_t = params.t * math.log(c)
    return UnionBound(log_bound, bound, log_c_t, log_bound < log_c_t)


def direct_union_bound(params: ConstructionParams) -> float:
    """Direct evaluation of the union bound; raises OverflowError when it does not fit a float."""
    eps, d, t = params.epsilon, params.d, params.t
    return (4 * d) ** (t * params.ell) * math.exp(-(eps**2) * t * d ** (1 - params.alpha) / 400)


def bound_chain_grid(
    params: ConstructionParams,
    m_values: Iterable[int] | None = None,
    q_values: Iterable[int] | None = None,
) -> pd.DataFrame:
    """
    Evaluates the compatibility chain over a grid of (m, q).

    By default m runs over a spread of edge counts up to floor(t d / 2) and
    q over multiples of the good-pair threshold.
    """
    pairs = math.comb(params.t, 2)
    if m_values is None:
        top = min(pairs, params.t * params.d // 2)
        m_values = sorted({max(0, round(top * f)) for f in (0, 0.25, 0.5, 0.75, 1.0)})
    if q_values is None:
        base = math.ceil(good_pair_threshold(params))
        q_values = sorted({min(pairs, k * max(base, 1)) for k in (0, 1, 2, 4)})

    rows = []
    for m in m_values:
        for q in q_values:
            if m > pairs or q > pairs:
                continue
            bound = compatibility_probability_bound(params, m, q)
            rows.append(
                {
                    "t": params.t,
                    "m": m,
                    "q": q,
                    "exact_ratio": float(bound.exact_ratio),
                    "relaxed_bound": bound.relaxed_bound,
                    "exponential_bound": bound.exponential_bound,
                    "chain_applies": bound.chain_applies,
                    "chain_holds": bound.chain_holds,
                }
            )
    return pd.DataFrame(rows)
