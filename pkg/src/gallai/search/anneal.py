"""Simulated annealing for large δ2+δ3, started from T(r+1, n)."""

from __future__ import annotations

import math
import random
import time

from ..constructions import turan_template
from ..structure import thresholds_for
from ..template import ColouringTemplate, TemplateError
from .problem import SearchOutcome, SearchStats, Status, revalidate

PENALTY = 2.0
T_START = 1.0
T_END = 0.02


class _State:
    def __init__(self, t: ColouringTemplate):
        self.n = t.n
        self.rows = [list(t.adjacency[c]) for c in range(3)]
        self.deg = [[r.bit_count() for r in rows] for rows in self.rows]

    def mask(self, u: int, v: int) -> int:
        return sum(1 << c for c in range(3) if (self.rows[c][u] >> v) & 1)

    def closes_rainbow(self, u: int, v: int, m: int) -> bool:
        rows = self.rows
        for a in range(3):
            if (m >> a) & 1:
                b, c = (a + 1) % 3, (a + 2) % 3
                if (rows[b][u] & rows[c][v]) | (rows[c][u] & rows[b][v]):
                    return True
        return False

    def set_mask(self, u: int, v: int, m: int) -> None:
        for c in range(3):
            had = (self.rows[c][u] >> v) & 1
            want = (m >> c) & 1
            if had == want:
                continue
            if want:
                self.rows[c][u] |= 1 << v
                self.rows[c][v] |= 1 << u
            else:
                self.rows[c][u] &= ~(1 << v)
                self.rows[c][v] &= ~(1 << u)
            step = 1 if want else -1
            self.deg[c][u] += step
            self.deg[c][v] += step

    def mins(self) -> tuple[int, int, int]:
        return min(self.deg[0]), min(self.deg[1]), min(self.deg[2])

    def template(self) -> ColouringTemplate:
        return ColouringTemplate(self.n, tuple(tuple(r) for r in self.rows))  # type: ignore[arg-type]


def anneal(n: int, r: int, seed: int, iters: int) -> SearchOutcome:
    """Best feasible template found; deterministic in (seed, iters).

    Moves recolour one pair with a random colour subset.  Moves closing a
    rainbow triangle are rejected, so every visited state is Gallai.  The
    score is δ2+δ3 minus a penalty for missing the δ1 threshold or an empty
    colour-2/3 degree.
    """
    if n < r + 1:
        raise TemplateError("anneal needs n >= r + 1")
    th = thresholds_for(r, n)
    rng = random.Random(seed)
    state = _State(turan_template(r + 1, n))
    start = time.monotonic()

    def score(d1: int, d2: int, d3: int) -> float:
        short = max(0, th.delta1_min - d1) + (d2 == 0) + (d3 == 0)
        return d2 + d3 - PENALTY * short

    def feasible(d1: int, d2: int, d3: int) -> bool:
        return d1 >= th.delta1_min and d2 >= 1 and d3 >= 1

    d = state.mins()
    current = score(*d)
    best_val, best_t = (d[1] + d[2], state.template()) if feasible(*d) else (None, None)
    stats = SearchStats()
    rejected = 0
    for it in range(iters):
        temp = T_START * (T_END / T_START) ** (it / max(iters - 1, 1))
        u, v = rng.sample(range(n), 2)
        old = state.mask(u, v)
        new = rng.randrange(7)
        new += new >= old
        if state.closes_rainbow(u, v, new):
            rejected += 1
            continue
        state.set_mask(u, v, new)
        d = state.mins()
        cand = score(*d)
        if cand >= current or rng.random() < math.exp((cand - current) / temp):
            current = cand
            if feasible(*d) and (best_val is None or d[1] + d[2] > best_val):
                best_val, best_t = d[1] + d[2], state.template()
        else:
            state.set_mask(u, v, old)

    stats.nodes = iters
    stats.pruned["rainbow"] = rejected
    stats.elapsed = time.monotonic() - start
    status = Status.BUDGET_EXCEEDED
    if best_val is not None and best_val > th.sum_max:
        status = Status.FOUND_COUNTEREXAMPLE
    out = SearchOutcome(n, r, status, best_val, best_t, stats, heuristic=True)
    if best_t is not None and not revalidate(out):
        raise RuntimeError("annealing produced a template that fails revalidation")
    return out
