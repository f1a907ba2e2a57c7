from randgen.samplers import h_edge_count, sample_gnm, sample_gnp, sample_h
from randgen.seeds import (
    BLOBBING_TAG,
    CHERNOFF_TAG,
    G0_TAG,
    STAR_TAG,
    TRIAL_TAG,
    Seed,
    as_generator,
    resolve_seed,
)

__all__ = [
    "BLOBBING_TAG",
    "CHERNOFF_TAG",
    "G0_TAG",
    "STAR_TAG",
    "TRIAL_TAG",
    "Seed",
    "as_generator",
    "h_edge_count",
    "resolve_seed",
    "sample_gnm",
    "sample_gnp",
    "sample_h",
]
