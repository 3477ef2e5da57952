"""Standard named relations shared by tests, demos, and the CLI built-ins."""

from __future__ import annotations

import itertools

from .core import Relation

OR2 = Relation.from_bits("OR", "01", "10", "11")
IMPL = Relation.from_bits("IMPL", "00", "01", "11")
NEQ = Relation.from_bits("NEQ", "01", "10")
EQ = Relation.from_bits("EQ", "00", "11")
NAND2 = Relation.from_bits("NAND", "00", "01", "10")
BOTH = Relation.from_bits("BOTH", "11")
FULL2 = Relation.from_bits("FULL2", "00", "01", "10", "11")
UNIT_T = Relation.from_bits("T", "1")
UNIT_F = Relation.from_bits("F", "0")
FREE1 = Relation.from_bits("FREE1", "0", "1")

#: Graph of the AND function: (x, y, x AND y).  Min-closed but needs a
#: ternary clause with a positive head, so it sits strictly between the
#: implication fragment and general min-closed relations.
AND_GRAPH = Relation.from_bits("AND_GRAPH", "000", "010", "100", "111")

#: A 4-ary relation whose flip sets violate separability: the tuple 0101 can
#: flip {0,1} and {0,1,2,3} but not their difference {2,3}.
NONSEP4 = Relation.from_bits("NONSEP4", "0101", "1010", "1001")


def p_in_q(p, q, name=None):
    """Relation over q coordinates true iff exactly p of them are 1."""
    if not 1 <= p <= q:
        raise ValueError(f"need 1 <= p <= q, got p={p}, q={q}")
    tuples = set()
    for ones in itertools.combinations(range(q), p):
        t = [0] * q
        for i in ones:
            t[i] = 1
        tuples.add(tuple(t))
    return Relation(name or f"R{p}_IN_{q}", q, frozenset(tuples))


def parity(r, b, name=None):
    """Relation of all r-tuples whose coordinate sum is b mod 2."""
    if b not in (0, 1):
        raise ValueError("b must be 0 or 1")
    tuples = frozenset(
        t for t in itertools.product((0, 1), repeat=r) if sum(t) % 2 == b
    )
    return Relation(name or (f"EVEN{r}" if b == 0 else f"ODD{r}"), r, tuples)


ONE_IN_THREE = p_in_q(1, 3, "ONE_IN_THREE")
TWO_IN_FOUR = p_in_q(2, 4, "TWO_IN_FOUR")
EVEN3 = parity(3, 0)
ODD3 = parity(3, 1)
EVEN4 = parity(4, 0)
ODD4 = parity(4, 1)

#: Relations reachable by name from the CLI when no relations file is given.
BUILTINS = {
    r.name: r
    for r in (
        OR2, IMPL, NEQ, EQ, NAND2, BOTH, FULL2, UNIT_T, UNIT_F, FREE1,
        AND_GRAPH, NONSEP4, ONE_IN_THREE, TWO_IN_FOUR, EVEN3, ODD3, EVEN4,
        ODD4,
    )
}
