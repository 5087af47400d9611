from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from ..structure import thresholds_for
from ..template import ColouringTemplate, TemplateError, degree_profile, find_rainbow_triangle_naive


# kernel adjacency rows are 64-bit words
MAX_SEARCH_N = 64


class Mode(enum.Enum):
    MAXIMIZE = "max"
    COUNTEREXAMPLE = "counterexample"


class Status(enum.Enum):
    OPTIMAL = "Optimal"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"
    FOUND_COUNTEREXAMPLE = "FoundCounterexample"


@dataclass(frozen=True)
class PruneConfig:
    use_symmetry: bool = True
    use_degree_bounds: bool = True
    use_prop1: bool = True
    # heuristic; only sound for counterexample search
    assume_lemmas: bool = False

    @classmethod
    def none(cls) -> "PruneConfig":
        return cls(False, False, False, False)

    def to_json(self) -> dict:
        return {
            "symmetry": self.use_symmetry,
            "degree": self.use_degree_bounds,
            "prop1": self.use_prop1,
            "lemmas": self.assume_lemmas,
        }


@dataclass(frozen=True)
class SearchProblem:
    n: int
    r: int
    mode: Mode = Mode.MAXIMIZE
    prune: PruneConfig = field(default_factory=PruneConfig)
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.r < 1:
            raise TemplateError("search needs n >= 1 and r >= 1")
        if self.n > MAX_SEARCH_N:
            raise TemplateError(f"search supports n <= {MAX_SEARCH_N}")
        if self.prune.assume_lemmas and self.mode is not Mode.COUNTEREXAMPLE:
            raise TemplateError("assume_lemmas is only permitted in counterexample mode")


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    feasible_leaves: int = 0
    pruned: dict[str, int] = field(
        default_factory=lambda: {"rainbow": 0, "degree": 0, "symmetry": 0, "prop1": 0, "lemmas": 0}
    )
    elapsed: float = 0.0
    approximate: bool = False
    # partial assignments the kernel rejected for a rainbow triangle:
    # pair masks (-1 undecided), then the pair index and the rejected mask
    rainbow_samples: list[list[int]] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        out = {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "feasible_leaves": self.feasible_leaves,
            "pruned": dict(self.pruned),
            "elapsed": round(self.elapsed, 3),
        }
        if self.approximate:
            out["approximate"] = True
        return out


@dataclass
class SearchOutcome:
    n: int
    r: int
    status: Status
    best_value: Optional[int] = None
    best_template: Optional[ColouringTemplate] = None
    stats: SearchStats = field(default_factory=SearchStats)
    # Optimal with no template satisfying the hypotheses
    infeasible: bool = False
    heuristic: bool = False

    def to_json(self, *, with_stats: bool = True) -> dict:
        out: dict = {
            "status": self.status.value,
            "n": self.n,
            "r": self.r,
            "best_value": self.best_value,
            "template": self.best_template.to_json() if self.best_template is not None else None,
        }
        if self.infeasible:
            out["infeasible"] = True
        if self.heuristic:
            out["heuristic"] = True
        if with_stats:
            out["stats"] = self.stats.to_json()
        return out


def revalidate(o: SearchOutcome) -> bool:
    """Re-check an outcome's template from scratch with the naive detector."""
    t = o.best_template
    if t is None:
        raise TemplateError("outcome carries no template")
    if t.n != o.n or find_rainbow_triangle_naive(t) is not None:
        return False
    th = thresholds_for(o.r, o.n)
    prof = degree_profile(t)
    d2, d3 = prof.delta(2), prof.delta(3)
    if prof.delta(1) < th.delta1_min or min(d2, d3) < 1:
        return False
    if o.best_value is not None and d2 + d3 != o.best_value:
        return False
    if o.status is Status.FOUND_COUNTEREXAMPLE and d2 + d3 <= th.sum_max:
        return False
    return True
