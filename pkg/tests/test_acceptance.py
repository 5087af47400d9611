"""Acceptance criteria 1-8; the terminal summary prints one PASS/FAIL line per criterion.

All checks are exact: integer equalities, identical witnesses, zero discrepancies.
"""

import random
import time
from fractions import Fraction
from math import ceil

import pytest

from gallai import degree_profile, find_rainbow_triangle, find_rainbow_triangle_naive
from gallai.constructions import construction_report, enumerate_patterns, pattern_template, turan_template
from gallai.search import Mode, PruneConfig, SearchProblem, Status, find_counterexample, maximize_sum, revalidate
from gallai.search.cnf import encode_cnf
from gallai.search.table import tabulate
from gallai.structure import pigeonhole_witness, thresholds_for, witness_is_valid

from .strategies import random_template

DENSITIES = (0.05, 0.2, 0.4, 0.6, 0.8, 0.95)


def fail_on_counterexample(o):
    # a counterexample is only real if the independent re-check agrees
    if o.status is Status.FOUND_COUNTEREXAMPLE:
        assert not revalidate(o), f"theorem counterexample: {o.to_json()}"


@pytest.mark.criterion(1)
def test_turan_formulas_exact(record_property):
    start = time.monotonic()
    cells = 0
    for n in range(1, 41):
        for r in range(1, n + 1):
            t = turan_template(r, n)
            prof = degree_profile(t)
            assert prof.delta(1) == (r - 1) * n // r == n - ceil(Fraction(n, r)), (r, n)
            assert prof.delta(2) == prof.delta(3) == n // r - 1, (r, n)
            assert find_rainbow_triangle_naive(t) is None, (r, n)
            cells += 1
    elapsed = time.monotonic() - start
    record_property("detail", f"{cells} cells in {elapsed:.1f}s")
    assert elapsed < 10


@pytest.mark.criterion(2)
def test_pattern_templates(record_property):
    start = time.monotonic()
    checked = 0
    for r in range(1, 7):
        for spec in enumerate_patterns(r):
            for n in (r, 2 * r, 3 * r, 5 * r + 1):
                t = pattern_template(spec, n)
                assert find_rainbow_triangle_naive(t) is None, (spec, n)
                rep = construction_report(t, r, n)
                prof = degree_profile(t)
                d23 = min(prof.delta(2), prof.delta(3))
                # the two intervals, recomputed here rather than trusted from the report
                assert n - ceil(Fraction(n, r)) - 1 <= prof.delta(1), (spec, n)
                assert n // r - 1 <= d23 <= Fraction(n, r), (spec, n)
                assert rep.bounds_ok == {"colour1": True, "colours23": True}
                checked += 1
    elapsed = time.monotonic() - start
    record_property("detail", f"{checked} pattern templates in {elapsed:.1f}s")
    assert elapsed < 60


PRUNED = [(2, n) for n in (4, 5, 6, 7)] + [(3, n) for n in (4, 5, 6, 7)]


@pytest.mark.criterion(3)
@pytest.mark.parametrize("r,n", PRUNED)
def test_no_counterexample_all_pruning(r, n, record_property):
    o = find_counterexample(SearchProblem(n, r, Mode.COUNTEREXAMPLE, PruneConfig()))
    fail_on_counterexample(o)
    record_property("detail", f"r={r} n={n} pruned: {o.status.value} ({o.stats.nodes} nodes)")
    assert o.status is Status.EXHAUSTED


@pytest.mark.criterion(3)
@pytest.mark.parametrize("r,n", [(r, n) for r in (2, 3) for n in (4, 5)])
def test_no_counterexample_unpruned(r, n, record_property):
    o = find_counterexample(SearchProblem(n, r, Mode.COUNTEREXAMPLE, PruneConfig.none()))
    fail_on_counterexample(o)
    record_property("detail", f"r={r} n={n} unpruned: {o.status.value} ({o.stats.leaves} leaves)")
    assert o.status is Status.EXHAUSTED


@pytest.mark.criterion(3)
@pytest.mark.slow
@pytest.mark.parametrize("r", [2, 3])
def test_no_counterexample_symmetry_only_n6(r, symmetry_only_n6, record_property):
    o = symmetry_only_n6(r)
    fail_on_counterexample(o)
    record_property("detail", f"r={r} n=6 symmetry-only: {o.status.value} ({o.stats.nodes} nodes, {o.stats.elapsed:.0f}s)")
    assert o.status is Status.EXHAUSTED


@pytest.mark.criterion(4)
def test_tightness_bracket(record_property):
    rows = tabulate(8, 4, n_min=2)
    bad = []
    for row in rows:
        assert row.completed, row
        lower = 2 * (row.n // (row.r + 1) - 1)
        upper = 2 * row.n // (row.r + 1)
        if row.s_star is None:
            # no template meets the hypotheses; the construction has no parts of size 2 either
            ok = row.n < 2 * (row.r + 1)
        else:
            ok = lower <= row.s_star <= upper
        if not ok:
            bad.append(row)
    record_property("detail", f"{len(rows)} cells, {len(bad)} outside")
    assert bad == []


@pytest.mark.criterion(5)
def test_detector_equivalence(record_property):
    rng = random.Random(20240905)
    rainbow = 0
    for _ in range(10_000):
        n = rng.randint(0, 8)
        density = tuple(rng.choice(DENSITIES) for _ in range(3))
        t = random_template(rng, n, density)
        fast = find_rainbow_triangle(t)
        slow = find_rainbow_triangle_naive(t)
        assert fast == slow, t
        rainbow += fast is not None
    record_property("detail", f"10000 templates, {rainbow} with a rainbow triangle, 0 disagreements")
    # both branches of the equivalence must actually be exercised
    assert 1000 < rainbow < 9000


@pytest.mark.criterion(6)
def test_pigeonhole_implication(record_property):
    rng = random.Random(17)
    triggered = 0
    for _ in range(10_000):
        n = rng.randint(1, 10)
        # dense colour 1 and 3 make the hypotheses hold often
        density = (rng.choice(DENSITIES[2:]), rng.choice(DENSITIES), rng.choice(DENSITIES[2:]))
        t = random_template(rng, n, density)
        prof = degree_profile(t)
        w = pigeonhole_witness(t)
        if prof.delta(3) > 0 and prof.delta(1) + prof.Delta(2) > n:
            triggered += 1
            assert w is not None and witness_is_valid(t, w), t
            pairs = ((w.u, w.v), (w.u, w.w), (w.v, w.w))
            assert all(c in t.colours_of(*p) for p, c in zip(pairs, w.colours))
    record_property("detail", f"hypotheses held on {triggered} of 10000, 0 failures")
    assert triggered >= 1000


@pytest.mark.criterion(7)
@pytest.mark.parametrize("r", [2, 3])
def test_assume_lemmas_consistency(r, record_property):
    for n in range(1, 7):
        plain = find_counterexample(SearchProblem(n, r, Mode.COUNTEREXAMPLE, PruneConfig()))
        lemmas = find_counterexample(SearchProblem(n, r, Mode.COUNTEREXAMPLE, PruneConfig(assume_lemmas=True)))
        assert plain.status is lemmas.status is Status.EXHAUSTED, n
        if n <= 5:
            # maximize cannot use the lemmas; its optimum must agree with "no counterexample"
            best = maximize_sum(SearchProblem(n, r, Mode.MAXIMIZE))
            assert best.status is Status.OPTIMAL
            assert best.best_value is None or best.best_value <= thresholds_for(r, n).sum_max
    record_property("detail", f"r={r}: n=1..6 agree")


@pytest.mark.criterion(7)
@pytest.mark.slow
def test_assume_lemmas_expands_fewer_nodes(symmetry_only_n6, record_property):
    plain = symmetry_only_n6(2)
    lemmas = symmetry_only_n6(2, assume_lemmas=True)
    assert plain.status is lemmas.status is Status.EXHAUSTED
    record_property("detail", f"n=6 r=2 nodes {plain.stats.nodes} -> {lemmas.stats.nodes}")
    assert lemmas.stats.nodes < plain.stats.nodes


@pytest.mark.criterion(8)
@pytest.mark.parametrize("n,r,target", [(3, 2, 2), (6, 2, 5)])
def test_cnf_splits_unsat(n, r, target, record_property):
    solvers = pytest.importorskip("pysat.solvers")
    statuses = []
    for split, cnf in encode_cnf(n, r, target).items():
        with solvers.Cadical153(bootstrap_with=cnf.clauses) as s:
            statuses.append((split, s.solve()))
    search = find_counterexample(SearchProblem(n, r, Mode.COUNTEREXAMPLE))
    record_property("detail", f"n={n} r={r} target={target}: {len(statuses)} split(s) UNSAT")
    assert statuses and not any(sat for _, sat in statuses)
    assert search.status is Status.EXHAUSTED
