from minors.naive import naive_minor
from minors.search import Outcome, SearchBudget, SearchResult, find_minor
from minors.validate import ModelCheck, validate_model

__all__ = [
    "ModelCheck",
    "Outcome",
    "SearchBudget",
    "SearchResult",
    "find_minor",
    "naive_minor",
    "validate_model",
]
