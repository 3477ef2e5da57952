"""Deciders for the relation properties that drive the dichotomies, and the
language-level verdict combining them.

Class membership tests work directly on the explicit tuple sets:

* Horn (= min-closed) and flip separability are closure conditions, checked
  by enumeration over tuples.
* Affinity is decided by closure under coordinate-wise XOR of tuple triples,
  which matches the linear-equation definition.
* Width-2 affine and the implicative fragment are clause-definable classes,
  decided by the entailed-constraint method: collect every constraint of the
  allowed syntactic shapes that holds across the whole relation and compare
  the solution set of the collection with the relation itself.

The empty relation is treated as vacuously min-closed and flip separable but
as not expressible in the equation/clause classes, which keeps the class
lattice (width-2 affine => affine => flip separable, implicative => Horn)
exception-free while preserving |R| = power of 2 for affine R.

Everything here is a pure function over immutable relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Relation

LS_P = "P"
LS_FPT = "FPT"
LS_W1_HARD = "W1_HARD"
MINONES_P = "P"
MINONES_NP_COMPLETE = "NP_COMPLETE"

#: Dispatcher tags in precedence order (polynomial algorithms first; the
#: implicative fragment is contained in Horn and width-2 affine in flip
#: separable, so several may match at once).
ALGORITHM_PRECEDENCE = ("ihsb", "width2", "horn_bst", "flip_sep_bst", "brute_force")


def is_zero_valid(rel):
    return (0,) * rel.arity in rel.tuples


def is_one_valid(rel):
    return (1,) * rel.arity in rel.tuples


def horn_violation(rel):
    """First tuple pair (in sorted order) whose coordinate-wise minimum is
    missing from the relation, or None if the relation is min-closed."""
    ts = sorted(rel.tuples)
    for i, a in enumerate(ts):
        for b in ts[i + 1:]:
            m = tuple(min(x, y) for x, y in zip(a, b))
            if m not in rel.tuples:
                return (a, b)
    return None


def is_horn(rel):
    """True iff the relation is min-closed."""
    return horn_violation(rel) is None


def is_affine(rel):
    """True iff the relation is closed under coordinate-wise XOR of tuple
    triples (equivalently, it is the solution set of a linear system)."""
    ts = sorted(rel.tuples)
    if not ts:
        return False
    t0 = ts[0]
    for a in ts:
        for b in ts:
            if tuple(x ^ y ^ z for x, y, z in zip(a, b, t0)) not in rel.tuples:
                return False
    return True


def width2_entailed_pairs(rel):
    """Coordinate pairs (i, j, kind) with i < j such that every tuple has
    t[i] == t[j] (kind '=') or t[i] != t[j] (kind '!=')."""
    pairs = []
    ts = rel.tuples
    for i, j in itertools.combinations(range(rel.arity), 2):
        if all(t[i] == t[j] for t in ts):
            pairs.append((i, j, "="))
        if all(t[i] != t[j] for t in ts):
            pairs.append((i, j, "!="))
    return tuple(pairs)


def is_width2_affine(rel):
    """True iff the relation equals the solution set of its entailed
    equality/disequality constraints."""
    if not rel.tuples:
        return False
    pairs = width2_entailed_pairs(rel)
    sols = set()
    for t in itertools.product((0, 1), repeat=rel.arity):
        if all(
            (t[i] == t[j]) if kind == "=" else (t[i] != t[j])
            for i, j, kind in pairs
        ):
            sols.add(t)
    return sols == set(rel.tuples)


def ihsb_entailed_clauses(rel):
    """All clauses of the three implicative-fragment shapes entailed by the
    relation: positive units, implications, and minimal negative clauses.

    Returns ``(units, impls, negs)`` over coordinate indices; ``negs``
    contains only inclusion-minimal coordinate sets.
    """
    ts = rel.tuples
    r = rel.arity
    units = tuple(i for i in range(r) if all(t[i] == 1 for t in ts))
    impls = tuple(
        (i, j)
        for i in range(r)
        for j in range(r)
        if i != j and all(t[i] <= t[j] for t in ts)
    )
    negs = []
    for size in range(1, r + 1):
        for s in itertools.combinations(range(r), size):
            # enumeration by size: any previously found set is no larger, so
            # containing one means this clause is implied and non-minimal
            if any(set(found) <= set(s) for found in negs):
                continue
            if all(any(t[i] == 0 for i in s) for t in ts):
                negs.append(s)
    return units, impls, tuple(negs)


def _ihsb_solutions(arity, units, impls, negs):
    sols = set()
    for t in itertools.product((0, 1), repeat=arity):
        if any(t[i] != 1 for i in units):
            continue
        if any(t[i] > t[j] for i, j in impls):
            continue
        if any(all(t[i] == 1 for i in s) for s in negs):
            continue
        sols.add(t)
    return sols


def is_ihsb_minus(rel):
    """True iff the relation equals the solution set of its entailed
    positive-unit, implication, and negative clauses."""
    if not rel.tuples:
        return False
    units, impls, negs = ihsb_entailed_clauses(rel)
    return _ihsb_solutions(rel.arity, units, impls, negs) == set(rel.tuples)


def flip_sets(rel, t):
    """All coordinate subsets S (including the empty set) such that flipping
    exactly the coordinates in S maps ``t`` to another tuple of the relation.

    Flip sets are in bijection with the relation's tuples: S(u) is the set
    of coordinates where t and u differ.
    """
    t = tuple(t)
    if t not in rel.tuples:
        raise ValueError(f"tuple {t} is not in relation {rel.name!r}")
    return frozenset(
        frozenset(i for i in range(rel.arity) if u[i] != t[i]) for u in rel.tuples
    )


def flipsep_violation(rel):
    """First (tuple, S1, S2) in canonical order such that S1 and S2 are flip
    sets with S1 strictly inside S2 but S2 - S1 is not a flip set; None if
    the relation is flip separable."""
    for t in sorted(rel.tuples):
        masks = sorted(flip_sets(rel, t), key=lambda s: (len(s), sorted(s)))
        mask_set = set(masks)
        for i, s1 in enumerate(masks):
            for s2 in masks[i + 1:]:
                if s1 < s2 and (s2 - s1) not in mask_set:
                    return (t, s1, s2)
    return None


def is_flip_separable(rel):
    return flipsep_violation(rel) is None


@dataclass(frozen=True)
class RelationClass:
    """Per-relation class flags plus counterexample data for the negatives."""

    zero_valid: bool
    one_valid: bool
    horn: bool
    affine: bool
    width2_affine: bool
    ihsb_minus: bool
    flip_separable: bool
    horn_witness: tuple | None = None
    flipsep_witness: tuple | None = None


def classify_relation(rel):
    hw = horn_violation(rel)
    fw = flipsep_violation(rel)
    return RelationClass(
        zero_valid=is_zero_valid(rel),
        one_valid=is_one_valid(rel),
        horn=hw is None,
        affine=is_affine(rel),
        width2_affine=is_width2_affine(rel),
        ihsb_minus=is_ihsb_minus(rel),
        flip_separable=fw is None,
        horn_witness=hw,
        flipsep_witness=fw,
    )


@dataclass(frozen=True)
class LanguageVerdict:
    """Dichotomy outcome for a finite set of relations.

    ``ls_class`` is the local-search complexity (P / FPT / W1_HARD, with
    ``np_hard`` set outside the polynomial cases), ``minones_class`` the
    complexity of minimum-weight satisfiability, and ``algorithm`` the
    dispatcher tag the solver will use.
    """

    per_relation: dict
    ls_class: str
    np_hard: bool
    minones_class: str
    algorithm: str


def classify_language(relations):
    """Classify a non-empty finite language and pick the solver algorithm."""
    rels = []
    for r in relations:
        if r not in rels:
            rels.append(r)
    if not rels:
        raise ValueError("cannot classify an empty language")
    per = {}
    for r in rels:
        if r.name in per and per[r.name][0] != r:
            raise ValueError(f"two distinct relations share the name {r.name!r}")
        per[r.name] = (r, classify_relation(r))
    classes = [cls for _, cls in per.values()]
    all_ihsb = all(c.ihsb_minus for c in classes)
    all_w2a = all(c.width2_affine for c in classes)
    all_horn = all(c.horn for c in classes)
    all_flipsep = all(c.flip_separable for c in classes)
    if all_ihsb:
        ls, algorithm = LS_P, "ihsb"
    elif all_w2a:
        ls, algorithm = LS_P, "width2"
    elif all_horn:
        ls, algorithm = LS_FPT, "horn_bst"
    elif all_flipsep:
        ls, algorithm = LS_FPT, "flip_sep_bst"
    else:
        ls, algorithm = LS_W1_HARD, "brute_force"
    minones = (
        MINONES_P
        if all(c.zero_valid for c in classes) or all_horn or all_w2a
        else MINONES_NP_COMPLETE
    )
    return LanguageVerdict(
        per_relation={name: cls for name, (_, cls) in per.items()},
        ls_class=ls,
        np_hard=ls != LS_P,
        minones_class=minones,
        algorithm=algorithm,
    )
