# harness/estimate.py

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from scipy.stats import norm

from config import main_config
from graphs.blowup import BlowupGraph
from graphs.errors import FeasibilityError
from graphs.graph import Graph
from harness.host import build_host
from minors.search import Outcome, SearchBudget, find_minor
from minors.validate import validate_model
from params.derive import ConstructionParams
from randgen.samplers import sample_h
from randgen.seeds import TRIAL_TAG, Seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    outcome: Outcome
    h_edges: int
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "outcome": self.outcome.value,
            "h_edges": self.h_edges,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
        }


@dataclass(frozen=True)
class MinorEstimate:
    """
    Outcome fractions over the trials. Inconclusive trials are counted on
    their own and never folded into either side.
    """

    trials: int
    model: int
    no_minor: int
    inconclusive: int
    interval: tuple[float, float]
    confidence: float
    outcomes: tuple[TrialOutcome, ...]

    @property
    def model_fraction(self) -> float:
        return self.model / self.trials

    @property
    def no_minor_fraction(self) -> float:
        return self.no_minor / self.trials

    @property
    def inconclusive_fraction(self) -> float:
        return self.inconclusive / self.trials

    def summary(self) -> dict:
        return {
            "trials": self.trials,
            "model": self.model,
            "no_minor": self.no_minor,
            "inconclusive": self.inconclusive,
            "model_fraction": self.model_fraction,
            "no_minor_fraction": self.no_minor_fraction,
            "inconclusive_fraction": self.inconclusive_fraction,
            "interval": list(self.interval),
            "confidence": self.confidence,
        }


def wilson_interval(successes: int, n: int, confidence: float | None = None) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    confidence = confidence if confidence is not None else main_config.CONFIDENCE_LEVEL
    z = norm.ppf(1 - (1 - confidence) / 2)
    phat = successes / n
    denom = 1 + z**2 / n
    centre = (phat + z**2 / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z**2 / (4 * n**2)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def trial_graph(params: ConstructionParams, seed: Seed, index: int) -> Graph:
    """The H of trial `index`: drawn from substream (TRIAL_TAG, index) of the seed's stream."""
    return sample_h(params.t, params.d, seed.generator(TRIAL_TAG, index))


def _run_trial(params: ConstructionParams, seed: Seed, index: int, host: Graph, budget: SearchBudget) -> TrialOutcome:
    h = trial_graph(params, seed, index)
    result = find_minor(h, host, budget)
    if result.outcome is Outcome.MODEL:
        check = validate_model(result.model, h, host)
        if not check:
            raise ArithmeticError(f"trial {index}: search returned an invalid model ({check.reason})")
    return TrialOutcome(index, result.outcome, h.edge_count, result.nodes, result.elapsed)


def _run_chunk(params, seed, indices, host, budget):
    return [_run_trial(params, seed, i, host, budget) for i in indices]


def estimate_minor_probability(
    params: ConstructionParams,
    trials: int,
    seed: Seed,
    budget: SearchBudget | None = None,
    host: BlowupGraph | None = None,
    workers: int = 1,
    **host_options,
) -> MinorEstimate:
    """
    Estimates P(H is a minor of G) for H ~ G(t, floor(t d / 2)).

    Args:
        params (ConstructionParams): The construction parameters.
        trials (int): Number of sampled H.
        seed (Seed): Its value fixes the host; its stream id selects the trials.
        budget (SearchBudget | None): Per-trial search budget.
        host (BlowupGraph | None): A prebuilt host; built with build_host otherwise.
        workers (int): Processes to spread the trials over.
        **host_options: Forwarded to build_host when no host is given.

    Returns:
        MinorEstimate: Counts per outcome and a Wilson interval on the Model fraction.

    Raises:
        FeasibilityError: If the host exceeds main_config.MAX_HOST_VERTICES.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    cap = main_config.MAX_HOST_VERTICES
    if params.d * params.r > cap:
        raise FeasibilityError(f"host would have {params.d * params.r} vertices, above the cap of {cap}")
    if host is None:
        host, _ = build_host(params, seed, **host_options)
    if host.graph.n > cap:
        raise FeasibilityError(f"host has {host.graph.n} vertices, above the cap of {cap}")

    budget = budget or SearchBudget()
    logger.info(f"🚀 Running {trials} minor trials on a host with {host.graph.n} vertices")
    if workers > 1:
        size = math.ceil(trials / workers)
        chunks = [range(i, min(i + size, trials)) for i in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, params, seed, c, host.graph, budget) for c in chunks]
            outcomes = [o for f in futures for o in f.result()]
    else:
        outcomes = []
        for i in range(trials):
            outcomes.append(_run_trial(params, seed, i, host.graph, budget))
            logger.info(f"  -> trial {i}: {outcomes[-1].outcome.value} ({outcomes[-1].nodes} nodes)")
    outcomes.sort(key=lambda o: o.index)

    model = sum(o.outcome is Outcome.MODEL for o in outcomes)
    no_minor = sum(o.outcome is Outcome.NO_MINOR for o in outcomes)
    inconclusive = trials - model - no_minor
    estimate = MinorEstimate(
        trials=trials,
        model=model,
        no_minor=no_minor,
        inconclusive=inconclusive,
        interval=wilson_interval(model, trials),
        confidence=main_config.CONFIDENCE_LEVEL,
        outcomes=tuple(outcomes),
    )
    logger.info(f"✅ Model {model}, NoMinor {no_minor}, Inconclusive {inconclusive} of {trials}")
    return estimate
