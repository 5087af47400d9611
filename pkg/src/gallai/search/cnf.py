"""DIMACS export of the counterexample question, one formula per (s2, s3) split."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path

from ..structure import thresholds_for


@dataclass
class CNF:
    n_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def new_var(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def to_dimacs(self) -> str:
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.n_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, cl)) + " 0" for cl in self.clauses)
        return "\n".join(lines) + "\n"


def _contradiction(cnf: CNF) -> None:
    x = cnf.new_var()
    cnf.clauses.extend([[x], [-x]])


def at_most(cnf: CNF, lits: list[int], k: int) -> None:
    """Sinz sequential counter: at most k of ``lits`` are true."""
    m = len(lits)
    if k >= m:
        return
    if k < 0:
        _contradiction(cnf)
        return
    if k <= 0:
        cnf.clauses.extend([-x] for x in lits)
        return
    s = [[cnf.new_var() for _ in range(k)] for _ in range(m - 1)]
    cnf.clauses.append([-lits[0], s[0][0]])
    cnf.clauses.extend([-s[0][j]] for j in range(1, k))
    for i in range(1, m - 1):
        cnf.clauses.append([-lits[i], s[i][0]])
        cnf.clauses.append([-s[i - 1][0], s[i][0]])
        for j in range(1, k):
            cnf.clauses.append([-lits[i], -s[i - 1][j - 1], s[i][j]])
            cnf.clauses.append([-s[i - 1][j], s[i][j]])
        cnf.clauses.append([-lits[i], -s[i - 1][k - 1]])
    cnf.clauses.append([-lits[m - 1], -s[m - 2][k - 1]])


def at_least(cnf: CNF, lits: list[int], k: int) -> None:
    if k <= 0:
        return
    if k > len(lits):
        _contradiction(cnf)
        return
    if k == 1:
        cnf.clauses.append(list(lits))
        return
    at_most(cnf, [-x for x in lits], len(lits) - k)


def pair_var(p: int, c: int) -> int:
    return 3 * p + c


def splits(target_sum: int) -> list[tuple[int, int]]:
    return [(s2, target_sum - s2) for s2 in range(target_sum - 1, 0, -1) if s2 >= target_sum - s2]


def encode_split(n: int, r: int, s2: int, s3: int) -> CNF:
    th = thresholds_for(r, n)
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    cnf = CNF(n_vars=3 * len(pairs))
    cnf.comments.append(f"gallai template n={n} r={r} delta1_min={th.delta1_min} split delta2>={s2} delta3>={s3}")
    for (u, v), i in index.items():
        for c in (1, 2, 3):
            cnf.comments.append(f"pair {u} {v} colour {c} -> var {pair_var(i, c)}")

    for u, v, w in combinations(range(n), 3):
        a, b, c = index[(u, v)], index[(u, w)], index[(v, w)]
        for ca, cb, cc in permutations((1, 2, 3)):
            cnf.clauses.append([-pair_var(a, ca), -pair_var(b, cb), -pair_var(c, cc)])

    for x in range(n):
        incident = [index[tuple(sorted((x, y)))] for y in range(n) if y != x]
        at_least(cnf, [pair_var(i, 1) for i in incident], th.delta1_min)
        for colour, bound in ((2, s2), (3, s3)):
            lits = [pair_var(i, colour) for i in incident]
            at_least(cnf, lits, 1)
            at_least(cnf, lits, bound)
    return cnf


def encode_cnf(n: int, r: int, target_sum: int) -> dict[tuple[int, int], CNF]:
    """One formula per split s2 + s3 = target_sum with s2 >= s3 >= 1.

    Colours 2 and 3 are interchangeable, so s2 >= s3 loses nothing.  Each
    formula is satisfiable iff a Gallai template exists with δ1 >= delta1_min,
    δ2 >= s2 and δ3 >= s3.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return {(s2, s3): encode_split(n, r, s2, s3) for s2, s3 in splits(target_sum)}


def write_cnf(directory: Path, n: int, r: int, target_sum: int) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for (s2, s3), cnf in encode_cnf(n, r, target_sum).items():
        path = directory / f"gallai_n{n}_r{r}_s{s2}-{s3}.cnf"
        path.write_text(cnf.to_dimacs())
        paths.append(path)
    return paths
