"""Extremal Gallai templates: the Turán-like T(r, n) and the pattern family C_{P,c}.

Colour 1 sits only on the pattern blocks listed in ``_block_colours``.
Every emitted template is checked for rainbow triangles before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterator, Mapping, Optional, Sequence, Union

from .template import ColouringTemplate, DegreeProfile, TemplateError, degree_profile, find_rainbow_triangle

PATTERN_COLOURS = (0, 2, 3)


@dataclass(frozen=True)
class Isolated:
    v: int

    def vertices(self) -> tuple[int, ...]:
        return (self.v,)

    def to_json(self) -> dict:
        return {"type": "isolated", "v": self.v}


@dataclass(frozen=True)
class Pair:
    u: int
    v: int
    colour: int

    def vertices(self) -> tuple[int, ...]:
        return (self.u, self.v)

    def to_json(self) -> dict:
        return {"type": "pair", "u": self.u, "v": self.v, "colour": self.colour}


Matching = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class K4:
    vs: tuple[int, int, int, int]
    # colour in {0, 2, 3} -> the perfect matching carrying it
    matchings: Mapping[int, Matching] = field(hash=False)

    def vertices(self) -> tuple[int, ...]:
        return self.vs

    def to_json(self) -> dict:
        return {
            "type": "k4",
            "vs": list(self.vs),
            "matchings": {str(c): [list(e) for e in m] for c, m in sorted(self.matchings.items())},
        }


Component = Union[Isolated, Pair, K4]


@dataclass(frozen=True)
class PatternSpec:
    r: int
    components: tuple[Component, ...]

    def to_json(self) -> dict:
        return {"r": self.r, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PatternSpec":
        comps: list[Component] = []
        try:
            for raw in data["components"]:
                kind = raw["type"]
                if kind == "isolated":
                    comps.append(Isolated(int(raw["v"])))
                elif kind == "pair":
                    comps.append(Pair(int(raw["u"]), int(raw["v"]), int(raw["colour"])))
                elif kind == "k4":
                    matchings = {
                        int(c): tuple(tuple(int(x) for x in e) for e in m)
                        for c, m in raw["matchings"].items()
                    }
                    comps.append(K4(tuple(int(x) for x in raw["vs"]), matchings))  # type: ignore[arg-type]
                else:
                    raise TemplateError(f"unknown component type {kind!r}")
            return cls(int(data["r"]), tuple(comps))
        except (KeyError, TypeError, ValueError) as exc:
            raise TemplateError(f"malformed pattern JSON: {exc}") from exc


@dataclass(frozen=True)
class ConstructionReport:
    r: int
    n: int
    is_gallai: bool
    profile: DegreeProfile
    # colour 1 interval, then the min(δ2, δ3) interval
    bounds_ok: dict[str, bool]

    @property
    def ok(self) -> bool:
        return self.is_gallai and all(self.bounds_ok.values())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "is_gallai": self.is_gallai,
            "bounds_ok": self.bounds_ok,
            "profile": self.profile.to_json(),
        }


def balanced_parts(r: int, n: int) -> list[range]:
    """Contiguous balanced partition of 0..n-1; the first n mod r parts are larger."""
    q, extra = divmod(n, r)
    parts, start = [], 0
    for k in range(r):
        size = q + (1 if k < extra else 0)
        parts.append(range(start, start + size))
        start += size
    return parts


def turan_template(r: int, n: int) -> ColouringTemplate:
    """G1 complete balanced r-partite; G2 = G3 = disjoint cliques on the parts."""
    if r < 1 or r > n:
        raise TemplateError(f"need 1 <= r <= n, got r={r}, n={n}")
    parts = balanced_parts(r, n)
    full = (1 << n) - 1
    g1, g23 = [0] * n, [0] * n
    for p in parts:
        block = sum(1 << v for v in p)
        for v in p:
            g23[v] = block & ~(1 << v)
            g1[v] = full & ~block
    return ColouringTemplate(n, (tuple(g1), tuple(g23), tuple(g23)))


def _k4_matchings(vs: Sequence[int]) -> list[Matching]:
    a, b, c, d = vs
    # canonical order: the matching containing {a, b} first
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def _norm_matching(m) -> Optional[frozenset]:
    try:
        return frozenset(frozenset(e) for e in m)
    except TypeError:
        return None


def validate_pattern(spec: PatternSpec) -> list[str]:
    """All violations of the pattern rules; an empty list means the spec is valid."""
    errors: list[str] = []
    if spec.r < 1:
        errors.append(f"r must be at least 1, got {spec.r}")
    cover: dict[int, int] = {}
    for comp in spec.components:
        vs = comp.vertices()
        if len(set(vs)) != len(vs):
            errors.append(f"{comp}: repeated vertex")
        for v in vs:
            if not 0 <= v < spec.r:
                errors.append(f"{comp}: vertex {v} outside [0, {spec.r})")
            cover[v] = cover.get(v, 0) + 1
        if isinstance(comp, Pair) and comp.colour not in PATTERN_COLOURS:
            errors.append(f"{comp}: edge colour {comp.colour} not in {{0, 2, 3}}")
        if isinstance(comp, K4):
            if len(vs) != 4:
                errors.append(f"{comp}: K4 needs exactly four vertices")
                continue
            if sorted(comp.matchings) != list(PATTERN_COLOURS):
                errors.append(f"{comp}: matching colours {sorted(comp.matchings)} not a bijection onto {{0, 2, 3}}")
            perfect = {_norm_matching(m) for m in _k4_matchings(vs)}
            given = [_norm_matching(m) for m in comp.matchings.values()]
            if any(m not in perfect for m in given):
                errors.append(f"{comp}: a matching is not a perfect matching of its K4")
            elif len(set(given)) != len(given):
                errors.append(f"{comp}: two colours share a matching")
    for v, k in sorted(cover.items()):
        if k > 1:
            errors.append(f"vertex {v} covered {k} times")
    missing = [v for v in range(max(spec.r, 0)) if v not in cover]
    if missing:
        errors.append(f"vertices {missing} not covered")
    if any(k > 1 for k in cover.values()) or missing:
        errors.append("vertex coverage is not a partition of [r]")
    return errors


def _block_colours(spec: PatternSpec) -> tuple[list[frozenset[int]], dict[tuple[int, int], frozenset[int]]]:
    """Colour sets inside each pattern vertex's part and across each part pair."""
    inside: list[frozenset[int]] = [frozenset()] * spec.r
    cross: dict[tuple[int, int], frozenset[int]] = {
        (i, j): frozenset({1}) for i, j in itertools.combinations(range(spec.r), 2)
    }

    def put(i: int, j: int, colours: frozenset[int]) -> None:
        cross[(min(i, j), max(i, j))] = colours

    for comp in spec.components:
        if isinstance(comp, Isolated):
            inside[comp.v] = frozenset({2, 3})
        elif isinstance(comp, Pair):
            if comp.colour == 0:
                put(comp.u, comp.v, frozenset({1, 2, 3}))
                inner = frozenset()
            else:
                put(comp.u, comp.v, frozenset({comp.colour}))
                inner = frozenset({1, 5 - comp.colour})
            inside[comp.u] = inside[comp.v] = inner
        else:
            for v in comp.vs:
                inside[v] = frozenset({1})
            for colour, matching in comp.matchings.items():
                carried = frozenset() if colour == 0 else frozenset({1, colour})
                for a, b in matching:
                    put(a, b, carried)
    return inside, cross


def pattern_template(spec: PatternSpec, n: int) -> ColouringTemplate:
    errors = validate_pattern(spec)
    if errors:
        raise TemplateError("invalid pattern: " + "; ".join(errors))
    if n < spec.r:
        raise TemplateError(f"need n >= r, got n={n}, r={spec.r}")
    parts = balanced_parts(spec.r, n)
    blocks = [sum(1 << v for v in p) for p in parts]
    inside, cross = _block_colours(spec)
    rows = [[0] * n for _ in range(3)]
    for i, p in enumerate(parts):
        for c in inside[i]:
            for v in p:
                rows[c - 1][v] |= blocks[i] & ~(1 << v)
    for (i, j), colours in cross.items():
        for c in colours:
            for v in parts[i]:
                rows[c - 1][v] |= blocks[j]
            for v in parts[j]:
                rows[c - 1][v] |= blocks[i]
    t = ColouringTemplate(n, tuple(tuple(r) for r in rows))  # type: ignore[arg-type]
    bad = find_rainbow_triangle(t)
    if bad is not None:
        raise AssertionError(f"pattern template has a rainbow triangle {bad} for {spec}")
    return t


def construction_report(t: ColouringTemplate, r: int, n: int) -> ConstructionReport:
    if t.n != n:
        raise TemplateError(f"template has {t.n} vertices, expected {n}")
    prof = degree_profile(t)
    d1 = prof.delta(1)
    d23 = min(prof.delta(2), prof.delta(3))
    bounds = {
        "colour1": n - ceil(Fraction(n, r)) - 1 <= d1 <= n - Fraction(n, r),
        "colours23": n // r - 1 <= d23 <= Fraction(n, r),
    }
    return ConstructionReport(r, n, find_rainbow_triangle(t) is None, prof, bounds)


def _k4_colourings(vs: tuple[int, int, int, int]) -> Iterator[K4]:
    ms = _k4_matchings(vs)
    for colours in itertools.permutations(PATTERN_COLOURS):
        yield K4(vs, dict(zip(colours, ms)))


def enumerate_patterns(r: int, limit: Optional[int] = None) -> list[PatternSpec]:
    """Valid pattern specs on [r], one per component-type/colour multiset.

    Components are laid out isolated, then pairs (by colour), then K4s on
    consecutive pattern vertices.  K4 colourings are not identified: the
    balanced partition gives the first parts more vertices, so the placement
    of the colour-0 matching can matter.
    """
    if r < 1:
        raise TemplateError("r must be at least 1")
    out: list[PatternSpec] = []
    for k4s in range(r // 4 + 1):
        for pairs in range((r - 4 * k4s) // 2 + 1):
            isolated = r - 4 * k4s - 2 * pairs
            for pair_colours in itertools.combinations_with_replacement(PATTERN_COLOURS, pairs):
                for k4_idx in itertools.combinations_with_replacement(range(6), k4s):
                    comps: list[Component] = [Isolated(v) for v in range(isolated)]
                    v = isolated
                    for col in pair_colours:
                        comps.append(Pair(v, v + 1, col))
                        v += 2
                    for which in k4_idx:
                        vs = (v, v + 1, v + 2, v + 3)
                        comps.append(list(_k4_colourings(vs))[which])
                        v += 4
                    out.append(PatternSpec(r, tuple(comps)))
                    if limit is not None and len(out) >= limit:
                        return out
    return out


def sweep_turan(n_max: int) -> list[str]:
    """Failures of the T(r, n) degree formulas or Gallai property for 1 <= r <= n <= n_max."""
    failures = []
    for n in range(1, n_max + 1):
        for r in range(1, n + 1):
            prof = degree_profile(turan_template(r, n))
            want1 = (r - 1) * n // r
            want23 = n // r - 1
            got = (prof.delta(1), prof.delta(2), prof.delta(3))
            if got != (want1, want23, want23):
                failures.append(f"T({r},{n}): degrees {got}, expected ({want1}, {want23}, {want23})")
            if find_rainbow_triangle(turan_template(r, n)) is not None:
                failures.append(f"T({r},{n}): rainbow triangle")
    return failures


def sweep_patterns(r_max: int, n_max: Optional[int] = None) -> tuple[int, list[str]]:
    """Check every enumerated pattern for r <= r_max at n in {r, 2r, 3r, 5r+1}.

    Returns (templates checked, failures).
    """
    failures, checked = [], 0
    for r in range(1, r_max + 1):
        for spec in enumerate_patterns(r):
            for n in (r, 2 * r, 3 * r, 5 * r + 1):
                if n_max is not None and n > n_max:
                    continue
                try:
                    report = construction_report(pattern_template(spec, n), r, n)
                except AssertionError as exc:
                    failures.append(str(exc))
                    continue
                checked += 1
                if not report.ok:
                    failures.append(f"{spec.to_json()} n={n}: {report.to_json()}")
    return checked, failures
