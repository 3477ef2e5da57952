#!/usr/bin/env python3
# Classify individual relations, then whole constraint languages, and show
# which side of the tractability boundary each language lands on.

from lscsp import classify_language, classify_relation
from lscsp.catalog import (
    AND_GRAPH, EQ, EVEN3, IMPL, NAND2, NEQ, NONSEP4, ONE_IN_THREE, OR2,
    TWO_IN_FOUR, UNIT_T,
)

relations = [
    OR2, IMPL, NEQ, EQ, UNIT_T, NAND2, ONE_IN_THREE, TWO_IN_FOUR, EVEN3,
    AND_GRAPH, NONSEP4,
]

print("per-relation class flags")
print(f"{'relation':14s} 0val 1val horn affn w2af ihsb flip")
for rel in relations:
    c = classify_relation(rel)
    flags = [c.zero_valid, c.one_valid, c.horn, c.affine, c.width2_affine,
             c.ihsb_minus, c.flip_separable]
    print(f"{rel.name:14s} " + " ".join(f"{int(f):4d}" for f in flags))

# negative answers come with counterexamples: OR fails min-closure on the
# pair below, and its flip sets are not difference-closed
c = classify_relation(OR2)
a, b = c.horn_witness
print("\nOR min-closure violation: min of", a, "and", b, "is missing")
t, s1, s2 = c.flipsep_witness
print("OR flip violation: tuple", t, "flips", sorted(s1), "and", sorted(s2),
      "but not their difference")

# language-level verdicts: the local-search problem is polynomial iff all
# relations are implicative or all are width-2 affine, fixed-parameter
# tractable iff all are min-closed or all are flip separable, and W[1]-hard
# otherwise
print("\nlanguage verdicts")
languages = [
    ("implications + units", [IMPL, UNIT_T, NAND2]),
    ("equalities/disequalities", [EQ, NEQ]),
    ("min-closed, not implicative", [AND_GRAPH, IMPL]),
    ("exactly-one constraints", [ONE_IN_THREE]),
    ("parity", [EVEN3]),
    ("plain OR (vertex cover)", [OR2]),
    ("mixed OR + 1-in-3", [OR2, ONE_IN_THREE]),
]
for label, rels in languages:
    v = classify_language(rels)
    hard = " NP-hard" if v.np_hard else ""
    print(f"  {label:30s} -> ls={v.ls_class}{hard}, "
          f"min-ones={v.minones_class}, solver={v.algorithm}")
