"""Exhaustive counterexample search over a grid of small (n, r).

    python scripts/verify_small_cases.py --n-max 8 --r-max 4 --budget-seconds 600
"""

import argparse
import json
import sys

from gallai.search import Mode, PruneConfig, SearchProblem, Status, find_counterexample


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--budget-seconds", type=float, default=600.0)
    ap.add_argument("--assume-lemmas", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    found = False
    for r in range(2, args.r_max + 1):
        for n in range(args.n_min, args.n_max + 1):
            prune = PruneConfig(assume_lemmas=args.assume_lemmas)
            p = SearchProblem(n, r, Mode.COUNTEREXAMPLE, prune, max_seconds=args.budget_seconds)
            o = find_counterexample(p, threads=args.threads)
            print(f"r={r} n={n:>2} {o.status.value:<20} nodes={o.stats.nodes:>12} {o.stats.elapsed:8.2f}s", flush=True)
            if o.status is Status.FOUND_COUNTEREXAMPLE:
                found = True
                json.dump(o.to_json(), sys.stdout, indent=2)
                print()
    sys.exit(1 if found else 0)


if __name__ == "__main__":
    main()
