from params.constants import lambda_constant, lambda_objective, stationarity
from params.derive import (
    RECORD_KEYS,
    ConstructionParams,
    DegreeTargets,
    Diagnostic,
    derive_params,
    ell_for,
    is_theorem_instance,
    lemma_params,
    parse_params_record,
    target_average_degree,
)

__all__ = [
    "RECORD_KEYS",
    "ConstructionParams",
    "DegreeTargets",
    "Diagnostic",
    "derive_params",
    "ell_for",
    "is_theorem_instance",
    "lambda_constant",
    "lambda_objective",
    "lemma_params",
    "parse_params_record",
    "stationarity",
    "target_average_degree",
]
