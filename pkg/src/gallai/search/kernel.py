"""Compiled depth-first search over pair colour subsets.

Pairs are visited in lexicographic order; each receives one of eight
colour masks (bit c-1 for colour c) in the order ∅, {1}, {2}, {3}, {1,2},
{1,3}, {2,3}, {1,2,3}.  All search state lives in caller-owned arrays so a
run can be paused after a node quota and resumed later.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MASK_ORDER = np.array([0, 1, 2, 4, 3, 5, 6, 7], dtype=np.int64)
MASK_RANK = np.array([0, 1, 2, 4, 3, 5, 6, 7], dtype=np.int64)  # inverse of MASK_ORDER

MODE_MAXIMIZE = 0
MODE_COUNTEREXAMPLE = 1

# indices into the ``stats`` array
ST_NODES = 0
ST_RAINBOW = 1
ST_DEGREE = 2
ST_SYMMETRY = 3
ST_PROP1 = 4
ST_LEMMAS = 5
ST_LEAVES = 6
ST_FEASIBLE = 7
ST_SAMPLED = 8
N_STATS = 9

# indices into the ``scalars`` array
SC_DEPTH = 0
SC_BEST = 1  # incumbent δ2+δ3, -1 when none
SC_DONE = 2
SC_FOUND = 3  # 1: counterexample to the bound seen at a feasible leaf
N_SCALARS = 4

# result codes
RUNNING = 0
FINISHED = 1
FOUND = 2

SAMPLE_EVERY = 100


def new_state(n: int, n_pairs: int, n_samples: int):
    return {
        "assign": np.full(n_pairs, -1, dtype=np.int64),
        "choice": np.zeros(n_pairs, dtype=np.int64),
        "rows": np.zeros((3, n), dtype=np.uint64),
        "deg": np.zeros((3, n), dtype=np.int64),
        "und": np.full(n, n - 1, dtype=np.int64),
        "stats": np.zeros(N_STATS, dtype=np.int64),
        "scalars": np.array([0, -1, 0, 0], dtype=np.int64),
        "best_assign": np.full(n_pairs, -1, dtype=np.int64),
        "samples": np.full((n_samples, n_pairs + 2), -1, dtype=np.int64),
    }


@njit(cache=True)
def _apply(k, m, pu, pv, assign, rows, deg, und):
    u = pu[k]
    v = pv[k]
    assign[k] = m
    und[u] -= 1
    und[v] -= 1
    for c in range(3):
        if (m >> c) & 1:
            rows[c, u] |= np.uint64(1) << np.uint64(v)
            rows[c, v] |= np.uint64(1) << np.uint64(u)
            deg[c, u] += 1
            deg[c, v] += 1


@njit(cache=True)
def _undo(k, pu, pv, assign, rows, deg, und):
    u = pu[k]
    v = pv[k]
    m = assign[k]
    assign[k] = -1
    und[u] += 1
    und[v] += 1
    for c in range(3):
        if (m >> c) & 1:
            rows[c, u] &= ~(np.uint64(1) << np.uint64(v))
            rows[c, v] &= ~(np.uint64(1) << np.uint64(u))
            deg[c, u] -= 1
            deg[c, v] -= 1


@njit(cache=True)
def _closes_rainbow(u, v, m, rows):
    # only pairs earlier in lexicographic order are set in ``rows``
    for a in range(3):
        if (m >> a) & 1:
            b = (a + 1) % 3
            c = (a + 2) % 3
            if (rows[b, u] & rows[c, v]) | (rows[c, u] & rows[b, v]):
                return True
    return False


@njit(cache=True)
def _same_side_in_g2(u, v, rows, n):
    """True iff u and v are joined by an even-length path in the current G2."""
    one = np.uint64(1)
    seen = one << np.uint64(u)
    layer = seen
    parity = 0
    while layer:
        if parity == 0 and (layer >> np.uint64(v)) & one:
            return True
        nxt = np.uint64(0)
        x = 0
        rest = layer
        while rest:
            if rest & one:
                nxt |= rows[1, x]
            rest >>= one
            x += 1
        layer = nxt & ~seen
        seen |= layer
        parity ^= 1
    return False


@njit(cache=True)
def run_chunk(
    n, pu, pv, base, base_hi, mode, d1min, sum_max,
    use_symmetry, use_degree, use_prop1, use_lemmas,
    quota, assign, choice, rows, deg, und, stats, scalars, best_assign, samples,
):
    """Expand up to ``quota`` nodes.  Returns RUNNING, FINISHED or FOUND.

    ``base`` is the first free depth; pairs below it are fixed by the caller.
    At depth ``base`` only mask choices below ``base_hi`` are tried, which
    lets callers split the tree into independent branches.
    """
    n_pairs = pu.shape[0]
    k = scalars[SC_DEPTH]
    if k < base:
        k = base
    spent = 0
    req0 = d1min
    while True:
        if k == n_pairs:
            stats[ST_LEAVES] += 1
            d1 = deg[0, 0]
            d2 = deg[1, 0]
            d3 = deg[2, 0]
            for x in range(1, n):
                d1 = min(d1, deg[0, x])
                d2 = min(d2, deg[1, x])
                d3 = min(d3, deg[2, x])
            if d1 >= d1min and d2 >= 1 and d3 >= 1:
                stats[ST_FEASIBLE] += 1
                val = d2 + d3
                if val > sum_max:
                    scalars[SC_FOUND] = 1
                    scalars[SC_BEST] = val
                    best_assign[:] = assign
                    scalars[SC_DEPTH] = k
                    return FOUND
                if mode == MODE_MAXIMIZE and val > scalars[SC_BEST]:
                    scalars[SC_BEST] = val
                    best_assign[:] = assign
            if k == base:
                scalars[SC_DONE] = 1
                scalars[SC_DEPTH] = k
                return FINISHED
            k -= 1
            continue

        if assign[k] >= 0:
            _undo(k, pu, pv, assign, rows, deg, und)
        if choice[k] == (base_hi if k == base else 8):
            if k == base:
                scalars[SC_DONE] = 1
                scalars[SC_DEPTH] = k
                return FINISHED
            choice[k] = 0
            k -= 1
            continue
        if spent >= quota:
            scalars[SC_DEPTH] = k
            return RUNNING

        m = MASK_ORDER[choice[k]]
        choice[k] += 1
        spent += 1
        stats[ST_NODES] += 1
        u = pu[k]
        v = pv[k]

        # row 0 is sorted by mask rank
        if use_symmetry and u == 0 and v >= 2 and MASK_RANK[m] < MASK_RANK[assign[k - 1]]:
            stats[ST_SYMMETRY] += 1
            continue

        if _closes_rainbow(u, v, m, rows):
            stats[ST_RAINBOW] += 1
            if stats[ST_RAINBOW] % SAMPLE_EVERY == 0 and stats[ST_SAMPLED] < samples.shape[0]:
                row = stats[ST_SAMPLED]
                samples[row, :n_pairs] = assign
                samples[row, n_pairs] = k
                samples[row, n_pairs + 1] = m
                stats[ST_SAMPLED] += 1
            continue

        if use_lemmas:
            if (m & 6) == 6:
                stats[ST_LEMMAS] += 1
                continue
            if (m & 2) and _same_side_in_g2(u, v, rows, n):
                stats[ST_LEMMAS] += 1
                continue

        _apply(k, m, pu, pv, assign, rows, deg, und)

        if use_symmetry and u == 0 and v == n - 1 or use_symmetry and u > 0:
            # vertex 0 has minimum G1-degree
            bad = False
            for x in range(1, n):
                if deg[0, x] + und[x] < deg[0, 0]:
                    bad = True
                    break
            if bad:
                stats[ST_SYMMETRY] += 1
                continue

        if use_degree:
            bad = False
            lo2 = n
            lo3 = n
            for x in range(n):
                if deg[0, x] + und[x] < req0:
                    bad = True
                    break
                lo2 = min(lo2, deg[1, x] + und[x])
                lo3 = min(lo3, deg[2, x] + und[x])
            if not bad:
                if mode == MODE_MAXIMIZE:
                    target = max(scalars[SC_BEST] + 1, 2)
                else:
                    target = sum_max + 1
                if lo2 < 1 or lo3 < 1 or lo2 + lo3 < target:
                    bad = True
            if bad:
                stats[ST_DEGREE] += 1
                continue

        if use_prop1:
            # δ_a + Δ_b > n with δ_c > 0 forces a rainbow triangle; every
            # feasible leaf has δ1 >= d1min and δ2, δ3 >= 1
            bad = False
            for a in range(3):
                lo = deg[a, 0]
                for x in range(1, n):
                    lo = min(lo, deg[a, x])
                need = req0 if a == 0 else 1
                lo = max(lo, need)
                for b in range(3):
                    if b == a:
                        continue
                    hi = deg[b, 0]
                    for x in range(1, n):
                        hi = max(hi, deg[b, x])
                    if lo + hi > n:
                        bad = True
                        break
                if bad:
                    break
            if bad:
                stats[ST_PROP1] += 1
                continue

        k += 1
