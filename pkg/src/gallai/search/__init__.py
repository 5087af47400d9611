from .bnb import find_counterexample, maximize_sum
from .problem import Mode, PruneConfig, SearchOutcome, SearchProblem, SearchStats, Status, revalidate

__all__ = [
    "Mode",
    "PruneConfig",
    "SearchOutcome",
    "SearchProblem",
    "SearchStats",
    "Status",
    "find_counterexample",
    "maximize_sum",
    "revalidate",
]
