# harness/experiment.py

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

import yaml

from blobbing.counting import good_pair_threshold
from config import main_config
from graphs.errors import ConfigError
from harness import __version__
from harness import config as harness_config
from harness.bounds import compatibility_probability_bound, union_bound_estimate
from harness.estimate import estimate_minor_probability
from harness.host import build_host
from harness.records import ExperimentRecord, append_record
from minors.search import SearchBudget
from params.constants import lambda_constant
from params.derive import ConstructionParams, derive_params, lemma_params
from randgen.samplers import h_edge_count
from randgen.seeds import Seed, resolve_seed
from verify.construction import g0_seed
from verify.star import StarMode

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("epsilon", "d", "t")
DERIVED_KEYS = ("x_star", "b", "ell", "s", "r")


@dataclass(frozen=True)
class ExperimentConfig:
    """A flat experiment definition. Derived parameters are not configurable."""

    epsilon: float
    d: int
    t: int
    beta: float | None = None
    p: float | None = None
    alpha: float | None = None
    trials: int = 10
    seed: int | None = None
    stream_id: int = 0
    mode: str = StarMode.SAMPLED.value
    node_limit: int = main_config.DEFAULT_NODE_LIMIT
    time_limit: float = main_config.DEFAULT_TIME_LIMIT
    c: float = main_config.DEFAULT_C
    star_samples: int = main_config.STAR_SAMPLES
    star_restarts: int = main_config.STAR_RESTARTS
    max_retries: int = main_config.DEFAULT_G0_RETRIES
    workers: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        """
        Validates a raw mapping.

        Raises:
            ConfigError: For missing, unknown, derived or mistyped keys; the
                offending key is in `field`.
        """
        if not isinstance(data, dict):
            raise ConfigError("experiment config must be a mapping of keys to values")
        known = {f.name: f for f in fields(cls)}
        for key in data:
            if key in DERIVED_KEYS:
                raise ConfigError(f"'{key}' is derived from the other parameters and cannot be set", field=key)
            if key not in known:
                raise ConfigError(f"unknown config key '{key}'", field=key)
        for key in REQUIRED_KEYS:
            if data.get(key) is None:
                raise ConfigError(f"config is missing required key '{key}'", field=key)

        values = {}
        for key, raw in data.items():
            kind = known[key].type
            if raw is None:
                values[key] = None
                continue
            if "int" in kind and "float" not in kind:
                if isinstance(raw, bool) or not isinstance(raw, int):
                    raise ConfigError(f"'{key}' must be an integer, got {raw!r}", field=key)
            elif "float" in kind:
                if isinstance(raw, bool) or not isinstance(raw, (int, float)):
                    raise ConfigError(f"'{key}' must be a number, got {raw!r}", field=key)
                raw = float(raw)
            elif "str" in kind and not isinstance(raw, str):
                raise ConfigError(f"'{key}' must be a string, got {raw!r}", field=key)
            values[key] = raw

        config = cls(**values)
        try:
            StarMode(config.mode)
        except ValueError:
            raise ConfigError(f"unknown verification mode '{config.mode}'", field="mode") from None
        for key in ("trials", "node_limit", "star_samples", "star_restarts", "max_retries", "workers"):
            if getattr(config, key) < 1:
                raise ConfigError(f"'{key}' must be positive", field=key)
        if config.time_limit <= 0:
            raise ConfigError("'time_limit' must be positive", field="time_limit")
        return config

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path: Path) -> ExperimentConfig:
    """Reads a flat YAML experiment file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"could not parse '{path}': {e}") from e
    return ExperimentConfig.from_dict(data or {})


def build_params(
    epsilon: float,
    d: int,
    t: int,
    beta: float | None = None,
    p: float | None = None,
    alpha: float | None = None,
) -> ConstructionParams:
    """The headline instance unless p or alpha override it; a missing override keeps its headline value."""
    if p is None and alpha is None:
        return derive_params(epsilon, d, t, beta)
    x_star, _ = lambda_constant()
    p = p if p is not None else -math.expm1(-x_star)
    alpha = alpha if alpha is not None else ((1 - epsilon) / (1 - epsilon / 2)) ** 2
    return lemma_params(p, epsilon, alpha, d, t, beta)


def params_from_config(config: ExperimentConfig) -> ConstructionParams:
    return build_params(config.epsilon, config.d, config.t, config.beta, config.p, config.alpha)


def _host_options(config: ExperimentConfig) -> dict:
    return {
        "mode": config.mode,
        "max_retries": config.max_retries,
        "samples": config.star_samples,
        "restarts": config.star_restarts,
    }


def _bounds(params: ConstructionParams, c: float) -> dict:
    union = union_bound_estimate(params, c)
    m = h_edge_count(params.t, params.d)
    q = min(math.comb(params.t, 2), math.ceil(good_pair_threshold(params)))
    compat = compatibility_probability_bound(params, m, q)
    return {
        "union": union.to_dict(),
        "compatibility": {
            "m": m,
            "q": q,
            "exact_ratio": float(compat.exact_ratio),
            "relaxed_bound": compat.relaxed_bound,
            "exponential_bound": compat.exponential_bound,
            "chain_applies": compat.chain_applies,
            "chain_holds": compat.chain_holds,
        },
    }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def run_experiment(config: ExperimentConfig, out: Path | None = None, seed: int | None = None) -> ExperimentRecord:
    """
    Runs derive_params, build_host, estimate_minor_probability and the bound
    evaluations, then appends the record to `out`.

    A failing stage is logged and recorded in `failures`; stages that need
    its output are skipped and the record is still written.

    Args:
        config (ExperimentConfig): The validated experiment definition.
        out (Path | None): JSONL file; defaults to harness_config.DEFAULT_RECORDS_FILE.
        seed (int | None): Command-line seed, overriding the environment and the config.

    Returns:
        ExperimentRecord: The record that was written.
    """
    resolved = resolve_seed(seed, fallback=config.seed, stream_id=config.stream_id)
    record = ExperimentRecord(
        version=__version__,
        config=config.to_dict(),
        seed={**resolved.to_dict(), "g0": g0_seed(resolved).to_dict()},
        timestamps={"started": _now()},
    )
    logger.info(f"🚀 Starting experiment d={config.d}, t={config.t}, eps={config.epsilon}, seed={resolved.value}")

    params = None
    try:
        params = params_from_config(config)
        record.params = params.to_dict()
        logger.info(f"  -> Derived params: ell={params.ell:.4f}, s={params.s}, r={params.r}")
    except Exception as e:
        logger.error(f"  -> Stage 'derive_params' failed: {e}")
        record.add_failure("derive_params", e)

    host = None
    if params is not None:
        try:
            host, report = build_host(params, resolved, **_host_options(config))
            record.g0 = {"n": host.base.n, "edges": [list(e) for e in host.base.edges]}
            record.g0_verdict = report.verdict.to_dict()
            record.host_stats = report.stats()
        except Exception as e:
            logger.error(f"  -> Stage 'build_host' failed: {e}")
            record.add_failure("build_host", e)

    if host is not None:
        try:
            estimate = estimate_minor_probability(
                params,
                config.trials,
                resolved,
                SearchBudget(config.node_limit, config.time_limit),
                host=host,
                workers=config.workers,
            )
            record.trials = [o.to_dict() for o in estimate.outcomes]
            record.estimate = estimate.summary()
        except Exception as e:
            logger.error(f"  -> Stage 'estimate' failed: {e}")
            record.add_failure("estimate", e)

    if params is not None:
        try:
            record.bounds = _bounds(params, config.c)
        except Exception as e:
            logger.error(f"  -> Stage 'bounds' failed: {e}")
            record.add_failure("bounds", e)

    record.timestamps["finished"] = _now()
    try:
        append_record(out or harness_config.DEFAULT_RECORDS_FILE, record)
    except OSError as e:
        logger.error(f"  -> Could not write the record: {e}")
        record.add_failure("write_record", e)

    if record.status == "ok":
        logger.info("✅ Experiment finished.")
    else:
        logger.warning(f"⚠️ Experiment finished with {len(record.failures)} failed stage(s).")
    return record


def replay_host_stats(record: ExperimentRecord) -> dict:
    """Rebuilds the host from a record's config and seed and returns its stats."""
    config = ExperimentConfig.from_dict(record.config)
    params = params_from_config(config)
    seed = Seed(record.seed["value"], record.seed["stream_id"])
    _, report = build_host(params, seed, **_host_options(config))
    return report.stats()
