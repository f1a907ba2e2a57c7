# verify/construction.py

from __future__ import annotations

import logging
from typing import NamedTuple

from config import main_config
from graphs.errors import RetriesExhaustedError
from graphs.graph import Graph
from params.derive import ConstructionParams
from randgen.samplers import sample_gnp
from randgen.seeds import G0_TAG, Seed
from verify.star import StarMode, StarVerdict, verify_star

logger = logging.getLogger(__name__)


class EdgeCheck(NamedTuple):
    edges: int
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return self._asdict()


class G0Construction(NamedTuple):
    graph: Graph
    verdict: StarVerdict
    edge_check: EdgeCheck
    attempts: int


def edge_threshold(params: ConstructionParams) -> float:
    """(1/2 - eps/4) p d^2, the edge count G0 must exceed."""
    return (0.5 - params.epsilon / 4) * params.p * params.d**2


def check_edges(g0: Graph, params: ConstructionParams) -> EdgeCheck:
    threshold = edge_threshold(params)
    return EdgeCheck(g0.edge_count, threshold, g0.edge_count > threshold)


def g0_seed(seed: Seed) -> Seed:
    """G0 depends only on the seed value, never on the trial stream."""
    return Seed(seed.value, 0)


def construct_g0(
    params: ConstructionParams,
    seed: Seed,
    mode: StarMode | str = StarMode.SAMPLED,
    max_retries: int | None = None,
    **star_options,
) -> G0Construction:
    """
    Resamples G(d, p) until a sample has enough edges and passes the (star)
    check in the requested mode.

    Attempt a draws its graph from substream (G0_TAG, a) and runs the (star)
    check with stream id a, so the result depends on the seed value only.

    Args:
        params (ConstructionParams): Supplies d, p, epsilon and the (star) data.
        seed (Seed): The experiment seed; its stream id is ignored.
        mode (StarMode | str): Verification mode for (star).
        max_retries (int | None): Attempts before giving up.
        **star_options: Forwarded to verify_star (budget, samples, restarts, workers).

    Returns:
        G0Construction: The accepted graph, its verdict, its edge check and
        the number of attempts used.

    Raises:
        RetriesExhaustedError: With the best candidate seen, when every attempt fails.
    """
    max_retries = max_retries or main_config.DEFAULT_G0_RETRIES
    base = g0_seed(seed)
    logger.info(
        f"🚀 Constructing G0 ~ G({params.d}, {params.p:.5f}) with up to {max_retries} attempts ({StarMode(mode).value} mode)"
    )

    best = None
    best_key = None
    for attempt in range(max_retries):
        g0 = sample_gnp(params.d, params.p, base.generator(G0_TAG, attempt))
        edges = check_edges(g0, params)
        verdict = verify_star(g0, params, mode=mode, seed=Seed(base.value, attempt), **star_options)
        if edges.passed and verdict.passed:
            logger.info(f"✅ G0 accepted on attempt {attempt + 1}: {edges.edges} edges > {edges.threshold:.4g}")
            return G0Construction(g0, verdict, edges, attempt + 1)

        logger.info(
            f"  -> Attempt {attempt + 1} rejected: edges {edges.edges} (need > {edges.threshold:.4g}), "
            f"(star) {'pass' if verdict.passed else 'fail'}"
        )
        key = (edges.passed, verdict.passed, verdict.count if verdict.count is not None else -1, edges.edges)
        if best_key is None or key > best_key:
            best, best_key = (g0, verdict), key

    logger.error(f"❌ No G0 candidate passed after {max_retries} attempts")
    raise RetriesExhaustedError(
        f"construct_g0 exhausted {max_retries} attempts",
        best_graph=best[0],
        best_verdict=best[1],
        attempts=max_retries,
    )
