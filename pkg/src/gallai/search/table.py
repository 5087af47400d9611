from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bnb import maximize_sum
from .problem import Mode, SearchProblem, Status


@dataclass(frozen=True)
class TableRow:
    n: int
    r: int
    status: str
    s_star: Optional[int]
    theorem_bound: int
    construction_value: int
    nodes: int

    @property
    def completed(self) -> bool:
        return self.status == Status.OPTIMAL.value

    def in_bracket(self) -> bool:
        """Construction value <= s* <= theorem bound, where the cell demands it.

        The construction T(r+1, n) only witnesses the lower end when its
        parts have at least two vertices, i.e. n >= 2(r+1).
        """
        if not self.completed:
            return True
        if self.s_star is None:
            return self.n < 2 * (self.r + 1)
        return self.construction_value <= self.s_star <= self.theorem_bound

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "status": self.status,
            "s_star": self.s_star,
            "theorem_bound": self.theorem_bound,
            "construction_value": self.construction_value,
            "nodes": self.nodes,
        }


def tabulate(n_max: int, r_max: int, budget_nodes: Optional[int] = None, n_min: int = 2, threads: int = 1) -> list[TableRow]:
    rows = []
    for r in range(1, r_max + 1):
        for n in range(n_min, n_max + 1):
            o = maximize_sum(SearchProblem(n, r, Mode.MAXIMIZE, max_nodes=budget_nodes), threads=threads)
            rows.append(
                TableRow(
                    n, r, o.status.value,
                    o.best_value if o.status is Status.OPTIMAL else None,
                    2 * n // (r + 1),
                    2 * (n // (r + 1) - 1),
                    o.stats.nodes,
                )
            )
    return rows


def render(rows: list[TableRow]) -> str:
    head = f"{'n':>3} {'r':>3} {'s*':>5} {'bound':>6} {'constr':>7} {'status':>15} {'nodes':>12}"
    lines = [head]
    for row in rows:
        s = "-" if row.s_star is None else str(row.s_star)
        lines.append(
            f"{row.n:>3} {row.r:>3} {s:>5} {row.theorem_bound:>6} {row.construction_value:>7} {row.status:>15} {row.nodes:>12}"
        )
    return "\n".join(lines)
