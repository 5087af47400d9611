"""Annealed lower bounds on max δ2+δ3 for n beyond exhaustive reach.

Prints, per (n, r), the best value over several seeds next to the
construction value 2(⌊n/(r+1)⌋ - 1) and the upper bound ⌊2n/(r+1)⌋.

    python scripts/anneal_lower_bounds.py --n 12 18 24 30 --r 2 3 --seeds 4 --iters 200000
"""

import argparse

from gallai.search import Status
from gallai.search.anneal import anneal


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[12, 18, 24, 30])
    ap.add_argument("--r", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seeds", type=int, default=4)
    ap.add_argument("--iters", type=int, default=100_000)
    args = ap.parse_args()

    print(f"{'n':>4} {'r':>3} {'constr':>7} {'anneal':>7} {'bound':>6}")
    for r in args.r:
        for n in args.n:
            if n < r + 1:
                continue
            outs = [anneal(n, r, seed, args.iters) for seed in range(args.seeds)]
            vals = [o.best_value for o in outs if o.best_value is not None]
            top = max(vals) if vals else None
            print(f"{n:>4} {r:>3} {2 * (n // (r + 1) - 1):>7} {str(top):>7} {2 * n // (r + 1):>6}")
            if any(o.status is Status.FOUND_COUNTEREXAMPLE for o in outs):
                print("  counterexample found; dump with `gallai anneal`")


if __name__ == "__main__":
    main()
