"""Export the DIMACS splits for (n, r, target) and run CaDiCaL on each (needs python-sat).

    python scripts/solve_cnf.py --n 6 --r 2 --target-sum 5 --out cnf/
"""

import argparse
from pathlib import Path

from pysat.formula import CNF
from pysat.solvers import Cadical153

from gallai.search.cnf import write_cnf


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--r", type=int, required=True)
    ap.add_argument("--target-sum", type=int, required=True)
    ap.add_argument("--out", default="cnf")
    args = ap.parse_args()

    for path in write_cnf(Path(args.out), args.n, args.r, args.target_sum):
        formula = CNF(from_file=str(path))
        with Cadical153(bootstrap_with=formula.clauses) as solver:
            verdict = "SAT" if solver.solve() else "UNSAT"
        print(f"{path.name}: {formula.nv} vars, {len(formula.clauses)} clauses, {verdict}")


if __name__ == "__main__":
    main()
