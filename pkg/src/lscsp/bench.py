"""Search-tree growth benchmark: nodes explored versus distance budget for
generated families, checked against the branching bound n * sum(r_max^i).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .catalog import EVEN3, IMPL
from .core import Constraint, Formula, LsInstance
from .solve import SolveConfig, solve


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    k: int
    nodes: int
    bound: int

    @property
    def within_bound(self):
        return self.nodes <= self.bound


def horn_chain(n, k):
    """Implication chain x_{i+1} -> x_i on an all-ones base: improving from
    start variable x_i forces the whole suffix, so tree size grows with k."""
    variables = tuple(f"x{i}" for i in range(1, n + 1))
    constraints = tuple(
        Constraint(IMPL, (i + 1, i)) for i in range(n - 1)
    )
    return LsInstance.checked(Formula(variables, constraints), (1,) * n, k)


def flipsep_chain(n, k):
    """Overlapping ternary parity constraints on a period-3 base; flip
    separable but neither min-closed nor width-2."""
    if n < 3:
        raise ValueError("flipsep family needs n >= 3")
    variables = tuple(f"x{i}" for i in range(1, n + 1))
    constraints = tuple(
        Constraint(EVEN3, (i, i + 1, i + 2)) for i in range(n - 2)
    )
    base = tuple(0 if i % 3 == 2 else 1 for i in range(n))
    return LsInstance.checked(Formula(variables, constraints), base, k)


_FAMILIES = {
    "horn": (horn_chain, "horn_bst", 2),
    "flipsep": (flipsep_chain, "flip_sep_bst", 3),
}


def run_bench(suites=("horn", "flipsep"), sizes=(8, 10), kmax=6):
    rows = []
    for family in suites:
        if family not in _FAMILIES:
            raise ValueError(f"unknown suite {family!r}; choose from {sorted(_FAMILIES)}")
        build, algorithm, r_max = _FAMILIES[family]
        for n in sizes:
            for k in range(1, kmax + 1):
                inst = build(n, k)
                decision = solve(inst, SolveConfig(force_algorithm=algorithm))
                bound = n * sum(r_max**i for i in range(k + 1))
                rows.append(BenchRow(family, n, k, decision.stats.nodes, bound))
    return rows


def format_table(rows):
    header = ("family", "n", "k", "nodes", "bound", "within_bound")
    widths = [len(h) for h in header]
    body = []
    for r in rows:
        cells = (r.family, str(r.n), str(r.k), str(r.nodes), str(r.bound),
                 str(r.within_bound).lower())
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
        body.append(cells)
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    for cells in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["family", "n", "k", "nodes", "bound", "within_bound"])
    for r in rows:
        writer.writerow([r.family, r.n, r.k, r.nodes, r.bound, str(r.within_bound).lower()])
    return buf.getvalue()


def from_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    return [
        BenchRow(
            row["family"], int(row["n"]), int(row["k"]),
            int(row["nodes"]), int(row["bound"]),
        )
        for row in reader
    ]
