# randgen/seeds.py

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from config import main_config

UINT64_MAX = 2**64 - 1

# --- Substream tags ---
# Keys appended after the stream id so that different consumers of one seed
# never share random draws.
G0_TAG = 0
STAR_TAG = 1
TRIAL_TAG = 2
CHERNOFF_TAG = 3
BLOBBING_TAG = 4


@dataclass(frozen=True)
class Seed:
    """
    A reproducible random stream identifier.

    The pair (value, stream_id) plus any substream keys feed numpy's
    SeedSequence as (entropy, spawn_key), which yields identical PCG64 streams
    on every platform.
    """

    value: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("value", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v <= UINT64_MAX:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v!r}")

    def generator(self, *keys: int) -> np.random.Generator:
        """Returns the generator for this stream, optionally narrowed by keys."""
        sequence = np.random.SeedSequence(
            entropy=int(self.value), spawn_key=(int(self.stream_id), *map(int, keys))
        )
        return np.random.Generator(np.random.PCG64(sequence))

    def to_dict(self) -> dict:
        return {"value": int(self.value), "stream_id": int(self.stream_id)}


def as_generator(rng: Seed | np.random.Generator) -> np.random.Generator:
    """Accepts either a Seed or an already-narrowed generator."""
    if isinstance(rng, Seed):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected Seed or numpy Generator, got {type(rng).__name__}")


def resolve_seed(cli_value: int | None, fallback: int | None = None, stream_id: int = 0) -> Seed:
    """
    Picks the seed value: command-line flag first, then the environment
    variable named by main_config.SEED_ENV_VAR, then the fallback, then 0.
    """
    if cli_value is not None:
        return Seed(int(cli_value), stream_id)
    env_value = os.getenv(main_config.SEED_ENV_VAR)
    if env_value not in (None, ""):
        try:
            return Seed(int(env_value), stream_id)
        except ValueError as e:
            raise ValueError(f"{main_config.SEED_ENV_VAR}={env_value!r} is not a valid seed") from e
    return Seed(int(fallback) if fallback is not None else 0, stream_id)
