"""Checkable predicates on templates: cuts, bipartiteness, degree thresholds.

Several of these (the 1-cut lemma, G2 ∩ G3 = ∅, G2 bipartite, the G3
dichotomy) are only theorems about minimal counterexamples.  Here they are
plain predicates; nothing asserts they hold for arbitrary Gallai templates.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .template import (
    COLOUR_PAIRS,
    ColouringTemplate,
    Graph,
    RainbowWitness,
    TemplateError,
    degree_profile,
    intersection_graph,
    is_gallai,
)


@dataclass(frozen=True)
class Cut:
    """A vertex bipartition crossed by no edge of colour 2 or 3."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    def to_json(self) -> dict:
        return {"side_a": sorted(self.side_a), "side_b": sorted(self.side_b)}


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    side_b: frozenset[int]

    def to_json(self) -> dict:
        return {"side_a": sorted(self.side_a), "side_b": sorted(self.side_b)}


class G3Class(enum.Enum):
    CROSS_ONLY = "CrossOnly"
    WITHIN_ONLY = "WithinOnly"
    MIXED = "Mixed"
    EMPTY = "Empty"


class Verdict(enum.Enum):
    HYPOTHESES_FAIL = "HypothesesFail"
    BOUND_HOLDS = "BoundHolds"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class Thresholds:
    r: int
    n: int
    delta1_min: int
    sum_max: int

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "delta1_min": self.delta1_min, "sum_max": self.sum_max}


def thresholds_for(r: int, n: int) -> Thresholds:
    """Integer form of the hypotheses δ1 > (1 - 1/r)n and the bound δ2 + δ3 ≤ 2n/(r+1)."""
    if r < 1:
        raise TemplateError("r must be at least 1")
    if n < 1:
        raise TemplateError("n must be at least 1")
    return Thresholds(r, n, (r - 1) * n // r + 1, 2 * n // (r + 1))


def _components(n: int, rows: tuple[int, ...]) -> list[frozenset[int]]:
    seen = 0
    comps = []
    for start in range(n):
        if (seen >> start) & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= rows[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(frozenset(v for v in range(n) if (comp >> v) & 1))
    return comps


def find_nontrivial_one_cut(t: ColouringTemplate) -> Optional[Cut]:
    """Split off the component of vertex 0 in G2 ∪ G3, if that graph is disconnected."""
    if t.n == 0:
        raise TemplateError("1-cuts need at least one vertex")
    union = tuple(a | b for a, b in zip(t.adjacency[1], t.adjacency[2]))
    first = _components(t.n, union)[0]
    if len(first) == t.n:
        return None
    return Cut(first, frozenset(range(t.n)) - first)


def _two_colour(g: Graph) -> tuple[list[int], list[int], Optional[tuple[int, int]]]:
    """BFS 2-colouring; returns (side, parent, first conflicting edge)."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.neighbours(x):
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    return side, parent, (x, y)
    return side, parent, None


def bipartition_of(g: Graph) -> Optional[Bipartition]:
    side, _, conflict = _two_colour(g)
    if conflict is not None:
        return None
    return Bipartition(
        frozenset(v for v in range(g.n) if side[v] == 0),
        frozenset(v for v in range(g.n) if side[v] == 1),
    )


def odd_closed_walk(g: Graph) -> Optional[list[int]]:
    """An odd closed walk (as a vertex list, first vertex repeated at the end), or None."""
    _, parent, conflict = _two_colour(g)
    if conflict is None:
        return None
    x, y = conflict

    def path_to_root(v: int) -> list[int]:
        out = [v]
        while parent[out[-1]] >= 0:
            out.append(parent[out[-1]])
        return out

    px, py = path_to_root(x), path_to_root(y)
    # both paths end at the BFS root; x and y sit at equal depth parity
    return px + py[::-1][1:] + [x]


def classify_g3(t: ColouringTemplate, bip: Bipartition) -> G3Class:
    a, b = bip.side_a, bip.side_b
    if a & b or (a | b) != frozenset(range(t.n)):
        raise TemplateError("not a bipartition of the vertex set")
    edges = t.edges(3)
    if not edges:
        return G3Class.EMPTY
    crossing = [(u in a) != (v in a) for u, v in edges]
    if all(crossing):
        return G3Class.CROSS_ONLY
    if not any(crossing):
        return G3Class.WITHIN_ONLY
    return G3Class.MIXED


def intersection_dichotomy_holds(t: ColouringTemplate, r: int) -> dict[tuple[int, int], bool]:
    """Per colour pair: G_i ∩ G_j is empty or δ⁺(G_i ∩ G_j) > (r-1)n / (r(r+1))."""
    if r < 1:
        raise TemplateError("r must be at least 1")
    bound = Fraction((r - 1) * t.n, r * (r + 1))
    report = {}
    for i, j in COLOUR_PAIRS:
        dp = intersection_graph(t, i, j).min_positive_degree()
        report[(i, j)] = dp is None or dp > bound
    return report


def pigeonhole_witness(t: ColouringTemplate) -> Optional[RainbowWitness]:
    """Rainbow triangle forced by δ(G3) > 0 and δ(G1) + Δ(G2) > n.

    v maximises the G2-degree, v' is its least G3-neighbour, and v'' is the
    least common vertex of N_G2(v) and N_G1(v').  The counting argument
    guarantees v'' exists.
    """
    prof = degree_profile(t)
    if not (prof.delta(3) > 0 and prof.delta(1) + prof.Delta(2) > t.n):
        return None
    deg2 = t.degrees(2)
    v = deg2.index(max(deg2))
    nb3 = t.row(3, v)
    v1 = (nb3 & -nb3).bit_length() - 1
    common = t.row(2, v) & t.row(1, v1)
    if not common:
        raise AssertionError("pigeonhole failed; degree profile is inconsistent")
    v2 = (common & -common).bit_length() - 1
    # colours: v v1 -> 3, v v2 -> 2, v1 v2 -> 1
    colour = {frozenset((v, v1)): 3, frozenset((v, v2)): 2, frozenset((v1, v2)): 1}
    a, b, c = sorted((v, v1, v2))
    return RainbowWitness(
        a, b, c, (colour[frozenset((a, b))], colour[frozenset((a, c))], colour[frozenset((b, c))])
    )


def witness_is_valid(t: ColouringTemplate, w: RainbowWitness) -> bool:
    pairs = ((w.u, w.v), (w.u, w.w), (w.v, w.w))
    return (
        len({w.u, w.v, w.w}) == 3
        and sorted(w.colours) == [1, 2, 3]
        and all(t.has(x, y, c) for (x, y), c in zip(pairs, w.colours))
    )


def check_theorem(t: ColouringTemplate, r: int) -> Verdict:
    th = thresholds_for(r, max(t.n, 1))
    if not is_gallai(t):
        return Verdict.HYPOTHESES_FAIL
    prof = degree_profile(t)
    if prof.delta(1) < th.delta1_min or min(prof.delta(2), prof.delta(3)) == 0:
        return Verdict.HYPOTHESES_FAIL
    if prof.delta(2) + prof.delta(3) <= th.sum_max:
        return Verdict.BOUND_HOLDS
    return Verdict.COUNTEREXAMPLE
