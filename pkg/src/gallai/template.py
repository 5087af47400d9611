"""Three-colour templates stored as per-colour bitset rows.

A template is a triple of graphs (G1, G2, G3) on the vertex set 0..n-1.
Unlike an edge colouring, one pair may belong to several colour classes.
Row ``v`` of colour ``c`` is a Python int whose bit ``w`` is set iff
``{v, w}`` is an edge of ``G_c``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Optional, Sequence

COLOURS = (1, 2, 3)
COLOUR_PAIRS = ((1, 2), (1, 3), (2, 3))

# (colour of uv, colour of uw, colour of vw) in lexicographic order
ASSIGNMENTS = tuple(permutations(COLOURS))


class TemplateError(ValueError):
    """Raised for out-of-domain arguments to template operations."""


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class Graph:
    """A plain simple graph on 0..n-1, as bitset rows."""

    n: int
    rows: tuple[int, ...]

    def degree(self, v: int) -> int:
        return _popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbours(self, v: int) -> Iterator[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in _bits(self.rows[u] >> (u + 1), u + 1)]

    def is_empty(self) -> bool:
        return not any(self.rows)

    def min_positive_degree(self) -> Optional[int]:
        positive = [d for d in self.degrees() if d > 0]
        return min(positive) if positive else None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            _check_pair(n, u, v)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))


def _bits(x: int, offset: int = 0) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1 + offset
        x ^= low


def _check_pair(n: int, u: int, v: int) -> None:
    if u == v:
        raise TemplateError(f"loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise TemplateError(f"pair ({u}, {v}) out of range for n={n}")


@dataclass(frozen=True)
class RainbowWitness:
    """Vertices u < v < w and the colours carried by uv, uw and vw."""

    u: int
    v: int
    w: int
    colours: tuple[int, int, int]

    def to_json(self) -> dict:
        a, b, c = self.colours
        return {
            "vertices": [self.u, self.v, self.w],
            "assignment": {f"{self.u}-{self.v}": a, f"{self.u}-{self.w}": b, f"{self.v}-{self.w}": c},
        }


@dataclass(frozen=True)
class DegreeProfile:
    n: int
    min_degree: tuple[int, int, int]
    max_degree: tuple[int, int, int]
    min_positive_degree: tuple[Optional[int], Optional[int], Optional[int]]
    is_empty: tuple[bool, bool, bool]
    # keyed by (i, j) with i < j
    intersection_min_positive: Mapping[tuple[int, int], Optional[int]]

    def delta(self, c: int) -> int:
        return self.min_degree[c - 1]

    def Delta(self, c: int) -> int:
        return self.max_degree[c - 1]

    def delta_plus(self, c: int) -> Optional[int]:
        return self.min_positive_degree[c - 1]

    def to_json(self) -> dict:
        out: dict = {"n": self.n}
        for c in COLOURS:
            out[str(c)] = {
                "min_degree": self.min_degree[c - 1],
                "max_degree": self.max_degree[c - 1],
                "min_positive_degree": self.min_positive_degree[c - 1],
                "empty": self.is_empty[c - 1],
            }
        out["intersections"] = {
            f"{i}{j}": self.intersection_min_positive[(i, j)] for i, j in COLOUR_PAIRS
        }
        return out


@dataclass(frozen=True)
class ColouringTemplate:
    n: int
    # adjacency[c - 1][v] is the row of v in colour c
    adjacency: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise TemplateError("n must be non-negative")
        if len(self.adjacency) != 3 or any(len(rows) != self.n for rows in self.adjacency):
            raise TemplateError("adjacency must hold three colour classes of n rows")

    def row(self, c: int, v: int) -> int:
        return self.adjacency[c - 1][v]

    def has(self, u: int, v: int, c: int) -> bool:
        return bool((self.adjacency[c - 1][u] >> v) & 1)

    def colours_of(self, u: int, v: int) -> frozenset[int]:
        return frozenset(c for c in COLOURS if self.has(u, v, c))

    def pair_mask(self, u: int, v: int) -> int:
        """Colour subset of {u, v} as a 3-bit mask (bit c-1 for colour c)."""
        return sum(1 << (c - 1) for c in COLOURS if self.has(u, v, c))

    def graph(self, c: int) -> Graph:
        return Graph(self.n, self.adjacency[c - 1])

    def edges(self, c: int) -> list[tuple[int, int]]:
        return self.graph(c).edges()

    def degrees(self, c: int) -> list[int]:
        return [_popcount(r) for r in self.adjacency[c - 1]]

    @classmethod
    def from_edges(cls, n: int, edges: Mapping[int, Iterable[tuple[int, int]]]) -> "ColouringTemplate":
        rows = [[0] * n for _ in COLOURS]
        for c, pairs in edges.items():
            if c not in COLOURS:
                raise TemplateError(f"unknown colour {c}")
            for u, v in pairs:
                _check_pair(n, u, v)
                rows[c - 1][u] |= 1 << v
                rows[c - 1][v] |= 1 << u
        return cls(n, tuple(tuple(r) for r in rows))  # type: ignore[arg-type]

    @classmethod
    def from_pair_masks(cls, n: int, masks: Sequence[int]) -> "ColouringTemplate":
        """Build from one 3-bit colour mask per pair, pairs in lexicographic order."""
        rows = [[0] * n for _ in COLOURS]
        for (u, v), m in zip(combinations(range(n), 2), masks, strict=True):
            for c in COLOURS:
                if (m >> (c - 1)) & 1:
                    rows[c - 1][u] |= 1 << v
                    rows[c - 1][v] |= 1 << u
        return cls(n, tuple(tuple(r) for r in rows))  # type: ignore[arg-type]

    def pair_masks(self) -> list[int]:
        return [self.pair_mask(u, v) for u, v in combinations(range(self.n), 2)]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": {str(c): [list(e) for e in self.edges(c)] for c in COLOURS}}

    @classmethod
    def from_json(cls, data: Mapping) -> "ColouringTemplate":
        try:
            n = int(data["n"])
            raw = data.get("edges", {})
            edges = {}
            for key, pairs in raw.items():
                c = int(key)
                edges[c] = [(int(a), int(b)) for a, b in pairs]
        except (KeyError, TypeError, ValueError) as exc:
            raise TemplateError(f"malformed template JSON: {exc}") from exc
        return cls.from_edges(n, edges)


def empty_template(n: int) -> ColouringTemplate:
    if n < 0:
        raise TemplateError("n must be non-negative")
    zero = (0,) * n
    return ColouringTemplate(n, (zero, zero, zero))


def set_pair(t: ColouringTemplate, u: int, v: int, colours: Iterable[int]) -> ColouringTemplate:
    """Return a copy of ``t`` in which {u, v} belongs exactly to ``colours``."""
    _check_pair(t.n, u, v)
    wanted = set(colours)
    if not wanted <= set(COLOURS):
        raise TemplateError(f"colours must be a subset of {{1, 2, 3}}, got {sorted(wanted)}")
    adjacency = []
    for c in COLOURS:
        rows = list(t.adjacency[c - 1])
        if c in wanted:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        else:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        adjacency.append(tuple(rows))
    return ColouringTemplate(t.n, tuple(adjacency))  # type: ignore[arg-type]


def intersection_graph(t: ColouringTemplate, i: int, j: int) -> Graph:
    if i == j:
        raise TemplateError("intersection needs two distinct colours")
    if i not in COLOURS or j not in COLOURS:
        raise TemplateError(f"unknown colour in ({i}, {j})")
    a, b = t.adjacency[i - 1], t.adjacency[j - 1]
    return Graph(t.n, tuple(x & y for x, y in zip(a, b)))


def degree_profile(t: ColouringTemplate) -> DegreeProfile:
    mins, maxs, pos, empty = [], [], [], []
    for c in COLOURS:
        g = t.graph(c)
        deg = g.degrees()
        mins.append(min(deg, default=0))
        maxs.append(max(deg, default=0))
        pos.append(g.min_positive_degree())
        empty.append(g.is_empty())
    inter = {(i, j): intersection_graph(t, i, j).min_positive_degree() for i, j in COLOUR_PAIRS}
    return DegreeProfile(t.n, tuple(mins), tuple(maxs), tuple(pos), tuple(empty), inter)  # type: ignore[arg-type]


def _rainbow_after(t: ColouringTemplate, u: int, v: int) -> list[tuple[int, tuple[int, int, int]]]:
    """Per assignment, the bitset of w > v completing a rainbow triangle on (u, v, w)."""
    above = ~((1 << (v + 1)) - 1)
    out = []
    for a, b, c in ASSIGNMENTS:
        if not t.has(u, v, a):
            continue
        hits = t.row(b, u) & t.row(c, v) & above
        if hits:
            out.append((hits, (a, b, c)))
    return out


def find_rainbow_triangle(t: ColouringTemplate) -> Optional[RainbowWitness]:
    """Lexicographically least rainbow triangle, or None for a Gallai template."""
    for u in range(t.n):
        for v in _bits(t.row(1, u) | t.row(2, u) | t.row(3, u)):
            if v <= u:
                continue
            hits = _rainbow_after(t, u, v)
            if not hits:
                continue
            w = min((h & -h).bit_length() - 1 for h, _ in hits)
            colours = min(a for h, a in hits if (h >> w) & 1)
            return RainbowWitness(u, v, w, colours)
    return None


def count_rainbow_triangles(t: ColouringTemplate) -> int:
    """Number of vertex triples admitting at least one rainbow assignment."""
    total = 0
    for u in range(t.n):
        for v in _bits(t.row(1, u) | t.row(2, u) | t.row(3, u)):
            if v <= u:
                continue
            union = 0
            for h, _ in _rainbow_after(t, u, v):
                union |= h
            total += _popcount(union)
    return total


def is_gallai(t: ColouringTemplate) -> bool:
    return find_rainbow_triangle(t) is None


def find_rainbow_triangle_naive(t: ColouringTemplate) -> Optional[RainbowWitness]:
    """Reference detector: every triple, every assignment, plain set membership.

    Deliberately shares nothing with the bitset kernel above so it can serve
    as an oracle for it.
    """
    colours: dict[tuple[int, int], set[int]] = {}
    for c in COLOURS:
        for e in t.edges(c):
            colours.setdefault(e, set()).add(c)
    none: set[int] = set()
    n = t.n
    for u in range(n):
        for v in range(u + 1, n):
            uv = colours.get((u, v), none)
            if not uv:
                continue
            for w in range(v + 1, n):
                uw = colours.get((u, w), none)
                vw = colours.get((v, w), none)
                if not uw or not vw:
                    continue
                for a, b, c in ASSIGNMENTS:
                    if a in uv and b in uw and c in vw:
                        return RainbowWitness(u, v, w, (a, b, c))
    return None


def relabel(t: ColouringTemplate, perm: Sequence[int]) -> ColouringTemplate:
    """Image of ``t`` under the vertex map ``v -> perm[v]``."""
    if sorted(perm) != list(range(t.n)):
        raise TemplateError("perm is not a bijection on 0..n-1")
    edges = {c: [(perm[u], perm[v]) for u, v in t.edges(c)] for c in COLOURS}
    return ColouringTemplate.from_edges(t.n, edges)


def dumps(t: ColouringTemplate) -> str:
    return json.dumps(t.to_json())


def loads(text: str) -> ColouringTemplate:
    return ColouringTemplate.from_json(json.loads(text))
