from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from gallai import ColouringTemplate, Graph, TemplateError, degree_profile, empty_template, find_rainbow_triangle_naive
from gallai.constructions import turan_template
from gallai.structure import (
    Bipartition,
    Cut,
    G3Class,
    Verdict,
    bipartition_of,
    check_theorem,
    classify_g3,
    find_nontrivial_one_cut,
    intersection_dichotomy_holds,
    odd_closed_walk,
    pigeonhole_witness,
    thresholds_for,
    witness_is_valid,
)

from .strategies import templates


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def components(n, edges):
    """Plain union-find, independent of the bitset BFS."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)})


def test_one_cut_examples():
    assert find_nontrivial_one_cut(turan_template(2, 6)) == Cut(frozenset({0, 1, 2}), frozenset({3, 4, 5}))
    path = ColouringTemplate.from_edges(5, {2: [(i, i + 1) for i in range(4)]})
    assert find_nontrivial_one_cut(path) is None
    assert find_nontrivial_one_cut(empty_template(2)) == Cut(frozenset({0}), frozenset({1}))
    assert find_nontrivial_one_cut(empty_template(1)) is None
    with pytest.raises(TemplateError):
        find_nontrivial_one_cut(empty_template(0))


def test_bipartition_examples():
    assert bipartition_of(cycle(5)) is None
    assert bipartition_of(cycle(6)) == Bipartition(frozenset({0, 2, 4}), frozenset({1, 3, 5}))
    assert bipartition_of(Graph.from_edges(4, [])) == Bipartition(frozenset(range(4)), frozenset())


def test_odd_walk_on_c5():
    walk = odd_closed_walk(cycle(5))
    g = cycle(5)
    assert walk[0] == walk[-1]
    assert (len(walk) - 1) % 2 == 1
    assert all(g.has_edge(a, b) for a, b in zip(walk, walk[1:]))
    assert odd_closed_walk(cycle(6)) is None


def test_classify_g3_examples():
    t = turan_template(2, 6)
    parts = Bipartition(frozenset({0, 1, 2}), frozenset({3, 4, 5}))
    assert classify_g3(t, parts) is G3Class.WITHIN_ONLY
    cross = ColouringTemplate.from_edges(4, {3: [(0, 2)]})
    bip = Bipartition(frozenset({0, 1}), frozenset({2, 3}))
    assert classify_g3(cross, bip) is G3Class.CROSS_ONLY
    mixed = ColouringTemplate.from_edges(4, {3: [(0, 2), (0, 1)]})
    assert classify_g3(mixed, bip) is G3Class.MIXED
    assert classify_g3(empty_template(4), bip) is G3Class.EMPTY
    with pytest.raises(TemplateError):
        classify_g3(cross, Bipartition(frozenset({0, 1}), frozenset({1, 2, 3})))
    with pytest.raises(TemplateError):
        classify_g3(cross, Bipartition(frozenset({0}), frozenset({2, 3})))


def test_intersection_dichotomy_examples():
    assert all(intersection_dichotomy_holds(empty_template(5), 2).values())
    assert intersection_dichotomy_holds(turan_template(2, 12), 2)[(2, 3)] is True
    t = ColouringTemplate.from_edges(12, {1: [(0, 1)], 2: [(0, 1)]})
    assert intersection_dichotomy_holds(t, 2)[(1, 2)] is False


def test_pigeonhole_examples():
    assert pigeonhole_witness(turan_template(2, 6)) is None
    k3 = ColouringTemplate.from_edges(3, {c: list(combinations(range(3), 2)) for c in (1, 2, 3)})
    w = pigeonhole_witness(k3)
    assert (w.u, w.v, w.w) == (0, 1, 2)
    assert witness_is_valid(k3, w)


def test_threshold_examples():
    assert (thresholds_for(2, 12).delta1_min, thresholds_for(2, 12).sum_max) == (7, 8)
    assert (thresholds_for(3, 12).delta1_min, thresholds_for(3, 12).sum_max) == (9, 6)
    assert (thresholds_for(1, 10).delta1_min, thresholds_for(1, 10).sum_max) == (1, 10)
    with pytest.raises(TemplateError):
        thresholds_for(0, 5)


def test_thresholds_against_exact_rationals():
    for r in range(1, 13):
        for n in range(1, 201):
            th = thresholds_for(r, n)
            limit = Fraction((r - 1) * n, r)
            assert th.delta1_min > limit and th.delta1_min - 1 <= limit
            assert th.sum_max <= Fraction(2 * n, r + 1) < th.sum_max + 1


@pytest.mark.parametrize("r", [2, 3])
def test_check_theorem_on_turan(r):
    t = turan_template(r + 1, 12)
    prof = degree_profile(t)
    # δ1 = 12 - 12/(r+1), δ2 = δ3 = 12/(r+1) - 1
    assert prof.delta(1) == {2: 8, 3: 9}[r]
    assert prof.delta(2) + prof.delta(3) == {2: 6, 3: 4}[r]
    assert check_theorem(t, r) is Verdict.BOUND_HOLDS


def test_check_theorem_failing_hypotheses():
    k = ColouringTemplate.from_edges(5, {c: list(combinations(range(5), 2)) for c in (1, 2, 3)})
    assert check_theorem(k, 2) is Verdict.HYPOTHESES_FAIL
    assert check_theorem(empty_template(9), 2) is Verdict.HYPOTHESES_FAIL


@given(templates(min_n=1))
def test_one_cut_iff_disconnected(t):
    union = set(t.edges(2)) | set(t.edges(3))
    cut = find_nontrivial_one_cut(t)
    assert (cut is not None) == (components(t.n, union) > 1)
    if cut is not None:
        assert 0 in cut.side_a and cut.side_a and cut.side_b
        assert cut.side_a | cut.side_b == frozenset(range(t.n))
        assert not any((u in cut.side_a) != (v in cut.side_a) for u, v in union)


@given(templates(min_n=1), st.sampled_from([1, 2, 3]))
def test_bipartition_or_odd_walk(t, c):
    g = t.graph(c)
    bip = bipartition_of(g)
    if bip is not None:
        assert bip.side_a | bip.side_b == frozenset(range(t.n)) and not bip.side_a & bip.side_b
        for u, v in g.edges():
            assert (u in bip.side_a) != (v in bip.side_a)
        assert odd_closed_walk(g) is None
    else:
        walk = odd_closed_walk(g)
        assert walk[0] == walk[-1] and (len(walk) - 1) % 2 == 1
        assert all(g.has_edge(a, b) for a, b in zip(walk, walk[1:]))


@given(templates(min_n=1), st.data())
def test_classify_g3_swap_invariant(t, data):
    side = data.draw(st.sets(st.integers(0, t.n - 1)))
    a = frozenset(side)
    b = frozenset(range(t.n)) - a
    assert classify_g3(t, Bipartition(a, b)) is classify_g3(t, Bipartition(b, a))


@given(templates(min_n=1))
def test_pigeonhole_implication(t):
    prof = degree_profile(t)
    w = pigeonhole_witness(t)
    if prof.delta(3) > 0 and prof.delta(1) + prof.Delta(2) > t.n:
        assert w is not None and witness_is_valid(t, w)
        assert find_rainbow_triangle_naive(t) is not None
    else:
        assert w is None


@given(templates(min_n=1), st.integers(1, 6))
def test_gallai_templates_meeting_hypotheses_obey_bound(t, r):
    # random small templates are weak evidence, but any COUNTEREXAMPLE would be fatal
    assert check_theorem(t, r) is not Verdict.COUNTEREXAMPLE
