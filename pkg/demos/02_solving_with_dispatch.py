#!/usr/bin/env python3
# Build one instance per tractable family, watch the dispatcher route each to
# its specialized algorithm, and cross-check every answer against the
# exhaustive oracle.

from lscsp import (
    Constraint, Formula, LsInstance, brute_force_ls, solve,
)
from lscsp.catalog import AND_GRAPH, EQ, IMPL, NEQ, ONE_IN_THREE, OR2


def show(label, inst):
    d = solve(inst)
    o = brute_force_ls(inst)
    agree = "agrees with oracle" if d.answer == o.answer else "ORACLE MISMATCH"
    print(f"{label:34s} {d.stats.algorithm:13s} "
          f"answer={'YES' if d.answer else 'NO ':3s} nodes={d.stats.nodes:4d}  {agree}")
    if d.witness is not None:
        flips = [v for v, x, y in zip(inst.formula.variables, inst.base, d.witness)
                 if x != y]
        print(f"{'':34s} witness flips {flips}")


# implication chain, all ones: flipping the head variable costs nothing
n = 6
chain = Formula(tuple(f"x{i}" for i in range(n)),
                tuple(Constraint(IMPL, (i, i + 1)) for i in range(n - 1)))
show("implication chain, k=2", LsInstance.checked(chain, (1,) * n, 2))

# implication cycle: any improvement must flip all six variables at once
cycle = Formula(tuple(f"x{i}" for i in range(n)),
                tuple(Constraint(IMPL, (i, (i + 1) % n)) for i in range(n)))
show("implication cycle, k=3", LsInstance.checked(cycle, (1,) * n, 3))
show("implication cycle, k=6", LsInstance.checked(cycle, (1,) * n, 6))

# equality/disequality components: flip a whole small component or nothing
pairs = Formula(("a", "b", "c", "d", "e"),
                (Constraint(EQ, (0, 1)), Constraint(NEQ, (2, 3))))
show("=/!= components, k=2", LsInstance.checked(pairs, (1, 1, 1, 0, 1), 2))

# min-closed but not implicative: bounded search tree over 1->0 flips
and_chain = Formula(("p", "q", "r", "s"),
                    (Constraint(AND_GRAPH, (0, 1, 2)),
                     Constraint(AND_GRAPH, (1, 2, 3))))
show("AND-graph chain, k=3", LsInstance.checked(and_chain, (1, 1, 1, 1), 3))

# flip-separable: every satisfying assignment of 1-in-3 has weight one, so
# nothing lighter exists
one3 = Formula(("x", "y", "z"), (Constraint(ONE_IN_THREE, (0, 1, 2)),))
show("1-in-3, k=2", LsInstance.checked(one3, (0, 1, 0), 2))

# OR constraints sit outside every tractable class; the dispatcher falls
# back to exhaustive search
vc = Formula(("u", "v", "w"),
             (Constraint(OR2, (0, 1)), Constraint(OR2, (1, 2))))
show("vertex cover (OR), k=1", LsInstance.checked(vc, (1, 1, 1), 1))
