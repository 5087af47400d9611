"""Exhaustive maximum of δ2+δ3 by enumerating (G1, G2) only.

A rainbow triangle uses exactly one G3 edge, so once G1 and G2 are fixed a
pair can join G3 iff no w has {uw in G1, vw in G2} or {uw in G2, vw in G1}.
Taking G3 to be every such pair is optimal (δ3 only grows), so the maximum
over all 8^C(n,2) templates equals the maximum over 4^C(n,2) pairs (G1, G2).
This shares no code with the branch-and-bound kernel.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np

from ..structure import thresholds_for
from ..template import ColouringTemplate


def _degrees(n: int, pairs, graphs: np.ndarray) -> np.ndarray:
    deg = np.zeros((n, graphs.shape[0]), dtype=np.int8)
    for i, (u, v) in enumerate(pairs):
        bit = ((graphs >> i) & 1).astype(np.int8)
        deg[u] += bit
        deg[v] += bit
    return deg


def closure_maximum(n: int, r: int, with_template: bool = False):
    """(best δ2+δ3 or None, witness template or None) over templates meeting the hypotheses."""
    th = thresholds_for(r, n)
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return None, None
    index = {p: i for i, p in enumerate(pairs)}
    n_graphs = 1 << len(pairs)
    if n_graphs > 1 << 16:
        raise ValueError(f"n={n} is too large for exhaustive (G1, G2) enumeration")

    everything = np.arange(n_graphs, dtype=np.int64)
    deg_all = _degrees(n, pairs, everything)
    mindeg = deg_all.min(axis=0)
    g1s = everything[mindeg >= th.delta1_min]
    g2s = everything[mindeg >= 1]
    if len(g1s) == 0 or len(g2s) == 0:
        return None, None
    g1_bits = [((g1s >> i) & 1).astype(bool) for i in range(len(pairs))]

    best: Optional[int] = None
    best_pair = None
    for g2 in g2s.tolist():
        d2 = int(mindeg[g2])
        deg3 = np.zeros((n, len(g1s)), dtype=np.int8)
        for (u, v), i in index.items():
            forbidden = np.zeros(len(g1s), dtype=bool)
            for w in range(n):
                if w == u or w == v:
                    continue
                uw, vw = index[tuple(sorted((u, w)))], index[tuple(sorted((v, w)))]
                if (g2 >> vw) & 1:
                    forbidden |= g1_bits[uw]
                if (g2 >> uw) & 1:
                    forbidden |= g1_bits[vw]
            allowed = (~forbidden).astype(np.int8)
            deg3[u] += allowed
            deg3[v] += allowed
        d3 = deg3.min(axis=0)
        ok = d3 >= 1
        if not ok.any():
            continue
        vals = np.where(ok, d3.astype(np.int64) + d2, -1)
        j = int(vals.argmax())
        if best is None or vals[j] > best:
            best = int(vals[j])
            best_pair = (int(g1s[j]), g2)

    if best is None or not with_template:
        return best, None
    return best, _closure_template(n, pairs, *best_pair)


def _closure_template(n: int, pairs, g1: int, g2: int) -> ColouringTemplate:
    edges = {
        1: [p for i, p in enumerate(pairs) if (g1 >> i) & 1],
        2: [p for i, p in enumerate(pairs) if (g2 >> i) & 1],
    }
    base = ColouringTemplate.from_edges(n, edges)
    g3 = []
    for u, v in pairs:
        if not any(
            (base.has(u, w, 1) and base.has(v, w, 2)) or (base.has(u, w, 2) and base.has(v, w, 1))
            for w in range(n)
            if w not in (u, v)
        ):
            g3.append((u, v))
    edges[3] = g3
    return ColouringTemplate.from_edges(n, edges)
