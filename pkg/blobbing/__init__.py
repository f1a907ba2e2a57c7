from blobbing.blobs import (
    Blobbing,
    MinorModel,
    count_good_pairs,
    format_blobbing,
    format_model,
    good_pairs,
    is_h_compatible,
    project,
)
from blobbing.counting import (
    BlobbingEnumeration,
    blob_series_margin,
    enumerate_blobbings,
    enumeration_work,
    g_count,
    g_count_bound,
    good_pair_threshold,
)
from blobbing.structure import GoodPairMinimum, GoodPairStructure, good_pair_structure, min_good_pairs

__all__ = [
    "Blobbing",
    "BlobbingEnumeration",
    "GoodPairMinimum",
    "GoodPairStructure",
    "MinorModel",
    "blob_series_margin",
    "count_good_pairs",
    "enumerate_blobbings",
    "enumeration_work",
    "format_blobbing",
    "format_model",
    "g_count",
    "g_count_bound",
    "good_pair_structure",
    "good_pair_threshold",
    "good_pairs",
    "is_h_compatible",
    "min_good_pairs",
    "project",
]
