"""Exact max of δ2+δ3 per (n, r) against the upper bound and the T(r+1, n) value.

    python scripts/tabulate_maximum.py --n-max 9 --r-max 4 --json table.json
"""

import argparse
import json

from gallai.search.table import render, tabulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--budget-nodes", type=int)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json")
    args = ap.parse_args()

    rows = tabulate(args.n_max, args.r_max, args.budget_nodes, threads=args.threads)
    print(render(rows))
    outside = [row for row in rows if not row.in_bracket()]
    print(f"\n{len(rows)} cells, {sum(row.completed for row in rows)} completed, {len(outside)} outside the bracket")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([row.to_json() for row in rows], fh, indent=2)


if __name__ == "__main__":
    main()
