"""Branch-and-bound driver around the compiled kernel."""

from __future__ import annotations

import multiprocessing as mp
import time
from itertools import combinations
from typing import Optional

import numpy as np

from ..constructions import turan_template
from ..structure import thresholds_for
from ..template import ColouringTemplate, TemplateError, degree_profile
from . import kernel as K
from .problem import Mode, SearchOutcome, SearchProblem, SearchStats, Status, revalidate

CHUNK = 1 << 20
N_SAMPLES = 64
# (n, r) cells where assume_lemmas has been cross-checked against plain search
LEMMAS_CHECKED = {(n, r) for n in range(1, 7) for r in (2, 3)}


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    ps = list(combinations(range(n), 2))
    pu = np.array([p[0] for p in ps], dtype=np.int64)
    pv = np.array([p[1] for p in ps], dtype=np.int64)
    return pu, pv


def construction_seed(n: int, r: int) -> Optional[ColouringTemplate]:
    """Best feasible T(q, n) over q, used as the starting incumbent."""
    th = thresholds_for(r, n)
    best, best_val = None, -1
    for q in range(1, n + 1):
        t = turan_template(q, n)
        prof = degree_profile(t)
        if prof.delta(1) >= th.delta1_min and min(prof.delta(2), prof.delta(3)) >= 1:
            val = prof.delta(2) + prof.delta(3)
            if val > best_val:
                best, best_val = t, val
    return best


class _Budget:
    """Node and wall-clock budget, optionally shared across processes."""

    def __init__(self, max_nodes, deadline, counter=None):
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.counter = counter
        self.local = 0

    def quota(self) -> int:
        if self.max_nodes is None:
            return CHUNK
        used = self.counter.value if self.counter is not None else self.local
        return max(0, min(CHUNK, self.max_nodes - used))

    def charge(self, nodes: int) -> None:
        if self.counter is not None:
            with self.counter.get_lock():
                self.counter.value += nodes
        else:
            self.local += nodes

    def expired(self) -> bool:
        if self.deadline is not None and time.monotonic() >= self.deadline:
            return True
        return self.max_nodes is not None and self.quota() == 0


def _run_branch(p: SearchProblem, lo: int, hi: int, seed_value: int, budget: _Budget, shared_best=None):
    th = thresholds_for(p.r, p.n)
    pu, pv = _pairs(p.n)
    st = K.new_state(p.n, len(pu), N_SAMPLES)
    st["choice"][0] = lo
    st["scalars"][K.SC_BEST] = seed_value
    mode = K.MODE_MAXIMIZE if p.mode is Mode.MAXIMIZE else K.MODE_COUNTEREXAMPLE
    cfg = p.prune
    code = K.RUNNING
    while True:
        if shared_best is not None and shared_best.value > st["scalars"][K.SC_BEST]:
            # adopt a better incumbent found elsewhere, for pruning only
            st["scalars"][K.SC_BEST] = shared_best.value
        if budget.expired():
            break
        before = int(st["stats"][K.ST_NODES])
        code = K.run_chunk(
            p.n, pu, pv, 0, hi, mode, th.delta1_min, th.sum_max,
            cfg.use_symmetry, cfg.use_degree_bounds, cfg.use_prop1, cfg.assume_lemmas,
            budget.quota(), st["assign"], st["choice"], st["rows"], st["deg"], st["und"],
            st["stats"], st["scalars"], st["best_assign"], st["samples"],
        )
        budget.charge(int(st["stats"][K.ST_NODES]) - before)
        if shared_best is not None and st["best_assign"][0] >= 0:
            with shared_best.get_lock():
                if st["scalars"][K.SC_BEST] > shared_best.value:
                    shared_best.value = int(st["scalars"][K.SC_BEST])
        if code != K.RUNNING:
            break
    best_assign = st["best_assign"].tolist() if st["best_assign"][0] >= 0 else None
    n_sampled = int(st["stats"][K.ST_SAMPLED])
    return {
        "code": int(code),
        "best_assign": best_assign,
        "stats": st["stats"].tolist(),
        "samples": st["samples"][:n_sampled].tolist(),
    }


_worker_state: dict = {}


def _init_worker(counter, shared_best, deadline, max_nodes):
    _worker_state["budget"] = _Budget(max_nodes, deadline, counter)
    _worker_state["best"] = shared_best


def _worker(args):
    p, branch, seed_value = args
    return branch, _run_branch(p, branch, branch + 1, seed_value, _worker_state["budget"], _worker_state["best"])


def _merge_stats(results, elapsed: float, parallel: bool) -> SearchStats:
    s = SearchStats(elapsed=elapsed, approximate=parallel)
    for res in results:
        v = res["stats"]
        s.nodes += v[K.ST_NODES]
        s.leaves += v[K.ST_LEAVES]
        s.feasible_leaves += v[K.ST_FEASIBLE]
        for key, idx in (("rainbow", K.ST_RAINBOW), ("degree", K.ST_DEGREE), ("symmetry", K.ST_SYMMETRY),
                         ("prop1", K.ST_PROP1), ("lemmas", K.ST_LEMMAS)):
            s.pruned[key] += v[idx]
    return s


def _own_best(n: int, masks: Optional[list[int]]) -> tuple[int, Optional[list[int]]]:
    # a branch's scalar incumbent may have been adopted from another worker
    if masks is None:
        return -1, None
    prof = degree_profile(ColouringTemplate.from_pair_masks(n, masks))
    return prof.delta(2) + prof.delta(3), masks


def _search(p: SearchProblem, threads: int = 1) -> SearchOutcome:
    start = time.monotonic()
    deadline = start + p.max_seconds if p.max_seconds is not None else None
    n_pairs = p.n * (p.n - 1) // 2

    seed = construction_seed(p.n, p.r) if p.mode is Mode.MAXIMIZE else None
    seed_value = -1
    if seed is not None:
        prof = degree_profile(seed)
        seed_value = prof.delta(2) + prof.delta(3)

    if n_pairs == 0:
        # a single vertex has all degrees 0 and never meets the hypotheses
        results = []
        codes = [K.FINISHED]
        best_pairs: list[tuple[int, Optional[list[int]]]] = []
    elif threads <= 1:
        res = _run_branch(p, 0, 8, seed_value, _Budget(p.max_nodes, deadline))
        results = [res]
        codes = [res["code"]]
        best_pairs = [_own_best(p.n, res["best_assign"])]
    else:
        ctx = mp.get_context("fork")
        counter = ctx.Value("q", 0)
        shared_best = ctx.Value("q", seed_value)
        jobs = [(p, b, seed_value) for b in range(8)]
        with ctx.Pool(threads, initializer=_init_worker, initargs=(counter, shared_best, deadline, p.max_nodes)) as pool:
            by_branch = dict(pool.imap_unordered(_worker, jobs))
        results = [by_branch[b] for b in range(8)]
        codes = [r["code"] for r in results]
        best_pairs = [_own_best(p.n, r["best_assign"]) for r in results]

    stats = _merge_stats(results, time.monotonic() - start, threads > 1)
    for res in results:
        stats.rainbow_samples.extend(res["samples"])
    out = SearchOutcome(p.n, p.r, Status.EXHAUSTED, stats=stats)
    out.heuristic = p.prune.assume_lemmas and (p.n, p.r) not in LEMMAS_CHECKED

    if K.FOUND in codes:
        i = codes.index(K.FOUND)
        value, masks = best_pairs[i]
        out.status = Status.FOUND_COUNTEREXAMPLE
        out.best_value = value
        out.best_template = ColouringTemplate.from_pair_masks(p.n, masks)
        if not revalidate(out):
            raise RuntimeError(f"kernel reported a counterexample that fails revalidation: {out.to_json()}")
        return out

    finished = all(c == K.FINISHED for c in codes)
    if p.mode is Mode.COUNTEREXAMPLE:
        out.status = Status.EXHAUSTED if finished else Status.BUDGET_EXCEEDED
        return out

    out.status = Status.OPTIMAL if finished else Status.BUDGET_EXCEEDED
    found = [(v, b, masks) for b, (v, masks) in enumerate(best_pairs) if masks is not None]
    if found:
        value = max(v for v, _, _ in found)
        masks = min((b, m) for v, b, m in found if v == value)[1]
        out.best_value = value
        out.best_template = ColouringTemplate.from_pair_masks(p.n, masks)
    elif seed is not None:
        out.best_value = seed_value
        out.best_template = seed
    elif finished:
        out.infeasible = True
    if out.best_template is not None and not revalidate(out):
        raise RuntimeError(f"search produced an invalid template: {out.to_json()}")
    return out


def maximize_sum(p: SearchProblem, threads: int = 1) -> SearchOutcome:
    """Exact maximum of δ2+δ3 over Gallai templates meeting the hypotheses."""
    if p.mode is not Mode.MAXIMIZE:
        raise TemplateError("maximize_sum needs mode=MAXIMIZE")
    return _search(p, threads)


def find_counterexample(p: SearchProblem, threads: int = 1) -> SearchOutcome:
    """Look for a Gallai template with δ1 >= delta1_min, δ2, δ3 >= 1, δ2+δ3 > sum_max."""
    if p.mode is not Mode.COUNTEREXAMPLE:
        raise TemplateError("find_counterexample needs mode=COUNTEREXAMPLE")
    return _search(p, threads)
