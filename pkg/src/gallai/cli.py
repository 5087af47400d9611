"""Command-line interface: ``gallai <command> ...``.

Exit codes: 0 success, 1 verification failure (including a counterexample),
2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .constructions import PatternSpec, pattern_template, sweep_patterns, sweep_turan, turan_template, validate_pattern
from .search import Mode, PruneConfig, SearchProblem, Status, find_counterexample, maximize_sum, revalidate
from .search.anneal import anneal
from .search.cnf import write_cnf
from .search.table import render, tabulate
from .structure import (
    bipartition_of,
    check_theorem,
    classify_g3,
    find_nontrivial_one_cut,
    intersection_dichotomy_holds,
    odd_closed_walk,
    pigeonhole_witness,
    thresholds_for,
)
from .template import ColouringTemplate, TemplateError, degree_profile, find_rainbow_triangle

MAX_N = 4096

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _vertex_count(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_N:
        raise argparse.ArgumentTypeError(f"n must lie in [1, {MAX_N}]")
    return n


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(payload: dict, out: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_template(path: str) -> ColouringTemplate:
    t = ColouringTemplate.from_json(_read_json(path))
    if t.n > MAX_N:
        raise UsageError(f"template has {t.n} vertices; the CLI accepts at most {MAX_N}")
    return t


def cmd_construct(args) -> int:
    if args.kind == "turan":
        if args.r > args.n:
            raise UsageError("need r <= n")
        t = turan_template(args.r, args.n)
    else:
        spec = PatternSpec.from_json(_read_json(args.spec))
        errors = validate_pattern(spec)
        if errors:
            _emit({"valid": False, "errors": errors})
            return EXIT_USAGE
        if args.n < spec.r:
            raise UsageError("need n >= r")
        t = pattern_template(spec, args.n)
    _emit(t.to_json(), args.output)
    return EXIT_OK


def check_report(t: ColouringTemplate, r: Optional[int]) -> tuple[dict, bool]:
    """Full JSON report for ``check``; the flag is False on a theorem counterexample."""
    prof = degree_profile(t)
    witness = find_rainbow_triangle(t)
    report: dict = {"profile": prof.to_json(), "gallai": witness is None}
    report["witness"] = witness.to_json() if witness else None
    cut = find_nontrivial_one_cut(t) if t.n else None
    report["one_cut"] = cut.to_json() if cut else None
    bipartite = {}
    for c in (1, 2, 3):
        g = t.graph(c)
        bip = bipartition_of(g)
        bipartite[str(c)] = (
            {"bipartite": True, "bipartition": bip.to_json()}
            if bip
            else {"bipartite": False, "odd_closed_walk": odd_closed_walk(g)}
        )
    report["bipartite"] = bipartite
    g2_bip = bipartition_of(t.graph(2))
    report["g3_class"] = classify_g3(t, g2_bip).value if g2_bip else None
    pig = pigeonhole_witness(t)
    report["pigeonhole_witness"] = pig.to_json() if pig else None
    ok = True
    if r is not None:
        verdict = check_theorem(t, r)
        report["verdict"] = verdict.value
        report["thresholds"] = thresholds_for(r, max(t.n, 1)).to_json()
        report["intersection_dichotomy"] = {
            f"{i}{j}": holds for (i, j), holds in intersection_dichotomy_holds(t, r).items()
        }
        ok = verdict.value != "COUNTEREXAMPLE"
    return report, ok


def cmd_check(args) -> int:
    t = _load_template(args.file)
    report, ok = check_report(t, args.r)
    _emit(report)
    prof = degree_profile(t)
    summary = f"n={t.n} δ=({prof.delta(1)}, {prof.delta(2)}, {prof.delta(3)}) gallai={report['gallai']}"
    if args.r is not None:
        summary += f" verdict={report['verdict']}"
    _info(summary)
    return EXIT_OK if ok else EXIT_FAIL


def _outcome_exit(status: Status) -> int:
    if status is Status.FOUND_COUNTEREXAMPLE:
        return EXIT_FAIL
    if status is Status.BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_search(args) -> int:
    mode = Mode(args.mode)
    if args.assume_lemmas and mode is not Mode.COUNTEREXAMPLE:
        raise UsageError("--assume-lemmas is only allowed with --mode counterexample")
    prune = PruneConfig(
        use_symmetry=not args.no_symmetry,
        use_degree_bounds=not args.no_degree_bounds,
        use_prop1=not args.no_prop1,
        assume_lemmas=args.assume_lemmas,
    )
    p = SearchProblem(args.n, args.r, mode, prune, args.budget_nodes, args.budget_seconds)
    run = maximize_sum if mode is Mode.MAXIMIZE else find_counterexample
    o = run(p, threads=args.threads)
    if o.best_template is not None and not revalidate(o):
        _info("outcome failed revalidation")
        return EXIT_FAIL
    _emit(o.to_json())
    _info(f"n={o.n} r={o.r} status={o.status.value} best={o.best_value} nodes={o.stats.nodes}")
    return _outcome_exit(o.status)


def cmd_anneal(args) -> int:
    if args.n < args.r + 1:
        raise UsageError("anneal needs n >= r + 1")
    o = anneal(args.n, args.r, args.seed, args.iters)
    _emit(o.to_json())
    _info(f"n={o.n} r={o.r} best={o.best_value}")
    # the iteration budget always runs out; only a counterexample is a failure
    return EXIT_FAIL if o.status is Status.FOUND_COUNTEREXAMPLE else EXIT_OK


def cmd_cnf(args) -> int:
    paths = write_cnf(Path(args.output), args.n, args.r, args.target_sum)
    _emit({"files": [str(p) for p in paths]})
    return EXIT_OK


def cmd_verify_constructions(args) -> int:
    turan_failures = sweep_turan(args.n_max)
    checked, pattern_failures = sweep_patterns(args.r_max, args.n_max)
    failures = turan_failures + pattern_failures
    _emit({"turan_n_max": args.n_max, "patterns_checked": checked, "failures": failures})
    _info(f"{len(failures)} failure(s)")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_table(args) -> int:
    rows = tabulate(args.n_max, args.r_max, args.budget_nodes, n_min=args.n_min, threads=args.threads)
    _emit({"rows": [row.to_json() for row in rows]})
    _info(render(rows))
    if not all(row.in_bracket() for row in rows):
        return EXIT_FAIL
    return EXIT_OK if all(row.completed for row in rows) else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gallai", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a construction as template JSON")
    csub = p.add_subparsers(dest="kind", required=True)
    pt = csub.add_parser("turan")
    pt.add_argument("--r", type=_positive, required=True)
    pt.add_argument("--n", type=_vertex_count, required=True)
    pt.add_argument("-o", "--output")
    pp = csub.add_parser("pattern")
    pp.add_argument("--spec", required=True)
    pp.add_argument("--n", type=_vertex_count, required=True)
    pp.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="report on a template file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--r", type=_positive)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="branch-and-bound search")
    p.add_argument("--n", type=_vertex_count, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="max")
    p.add_argument("--assume-lemmas", action="store_true")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-degree-bounds", action="store_true")
    p.add_argument("--no-prop1", action="store_true")
    p.add_argument("--budget-nodes", type=_positive)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("anneal", help="simulated annealing lower bound")
    p.add_argument("--n", type=_vertex_count, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--iters", type=int, required=True)
    p.set_defaults(func=cmd_anneal)

    p = sub.add_parser("cnf", help="export DIMACS files, one per (s2, s3) split")
    p.add_argument("--n", type=_vertex_count, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--target-sum", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cnf)

    p = sub.add_parser("verify-constructions", help="sweep both construction families")
    p.add_argument("--r-max", type=_positive, default=6)
    p.add_argument("--n-max", type=_vertex_count, default=40)
    p.set_defaults(func=cmd_verify_constructions)

    p = sub.add_parser("table", help="tabulate s*(n, r) against the bound and construction")
    p.add_argument("--n-max", type=_vertex_count, required=True)
    p.add_argument("--r-max", type=_positive, required=True)
    p.add_argument("--n-min", type=_vertex_count, default=2)
    p.add_argument("--budget-nodes", type=_positive)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_table)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, TemplateError) as exc:
        _info(f"error: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
