"""Dichotomy dispatcher and the specialized local-search algorithms.

Four routes, tried in precedence order by :func:`solve`:

* ``ihsb`` -- compile every relation into positive units, implications, and
  negative clauses, then propagate forced 1->0 flips; no branching occurs.
* ``width2`` -- for languages of equality/disequality constraints, flip a
  whole connected component of the entailed-edge graph; polynomial and
  independent of k.
* ``horn_bst`` -- bounded search tree over 1->0 flips for min-closed
  languages (a lighter solution can be assumed to only drop 1s).
* ``flip_sep_bst`` -- bounded search tree flipping each variable at most
  once, sound for flip-separable languages because the minimal-distance
  improving solution appears within the first k levels.

Anything else falls back to the exhaustive oracle.  All choices (start
variable, constraint, branch order) are canonical so reported witnesses are
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from . import classify
from .core import (
    BudgetExceededError,
    Decision,
    DEFAULT_SUBSET_BUDGET,
    InvalidInstanceError,
    SolveStats,
    brute_force_ls,
    dist,
    satisfies,
    validate_instance,
    weight,
)


class WrongAlgorithmError(ValueError):
    """A forced or dispatched algorithm does not fit the instance's language."""


@dataclass(frozen=True)
class SolveConfig:
    node_budget: int = DEFAULT_SUBSET_BUDGET
    deterministic: bool = True
    force_algorithm: str | None = None

    def __post_init__(self):
        if self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")


class PosUnit(NamedTuple):
    var: int


class Impl(NamedTuple):
    head: int  # must be 0 whenever head is 1 ... head -> tail
    tail: int


class Neg(NamedTuple):
    vars: frozenset


def ihsb_compile(rel):
    """Compile a relation of the implicative fragment into a minimized clause
    list (coordinate indices) whose solution set is exactly the relation."""
    if not classify.is_ihsb_minus(rel):
        raise WrongAlgorithmError(
            f"relation {rel.name!r} is not expressible with units, "
            f"implications, and negative clauses"
        )
    units, impls, negs = classify.ihsb_entailed_clauses(rel)
    clauses = (
        [PosUnit(i) for i in units]
        + [Impl(i, j) for i, j in impls]
        + [Neg(frozenset(s)) for s in negs]
    )
    target = set(rel.tuples)
    # drop clauses implied by the rest, in canonical order
    kept = list(clauses)
    for c in list(clauses):
        trial = [d for d in kept if d != c]
        if _clause_solutions(rel.arity, trial) == target:
            kept = trial
    return tuple(kept)


def _clause_solutions(arity, clauses):
    sols = set()
    for t in itertools.product((0, 1), repeat=arity):
        if _clauses_ok(t, clauses):
            sols.add(t)
    return sols


def _clauses_ok(t, clauses):
    for c in clauses:
        if isinstance(c, PosUnit):
            if t[c.var] != 1:
                return False
        elif isinstance(c, Impl):
            if t[c.head] > t[c.tail]:
                return False
        else:
            if all(t[i] == 1 for i in c.vars):
                return False
    return True


def _instance_clauses(formula, compiled):
    """Map per-relation clauses through each constraint's scope, giving
    variable-level clauses in canonical (constraint, clause) order."""
    out = []
    for c in formula.constraints:
        for cl in compiled[c.relation]:
            if isinstance(cl, PosUnit):
                out.append(PosUnit(c.scope[cl.var]))
            elif isinstance(cl, Impl):
                u, v = c.scope[cl.head], c.scope[cl.tail]
                if u != v:
                    out.append(Impl(u, v))
            else:
                out.append(Neg(frozenset(c.scope[i] for i in cl.vars)))
    return out


class _NodeCounter:
    __slots__ = ("nodes", "branch_points", "budget")

    def __init__(self, budget):
        self.nodes = 0
        self.branch_points = 0
        self.budget = budget

    def visit(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(
                f"search tree exceeded the node budget of {self.budget}"
            )


def _require(condition, algorithm, detail):
    if not condition:
        raise WrongAlgorithmError(f"{algorithm} requires {detail}")


def _scope_vars(constraint):
    seen = []
    for v in constraint.scope:
        if v not in seen:
            seen.append(v)
    return seen


def ihsb_propagate(inst, clauses, cfg=SolveConfig()):
    """Polynomial route for compiled implicative languages.

    Same outer loop as the Horn search tree, but after the initial 1->0 flip
    every step is forced: a broken positive unit is a dead end, a broken
    implication forces its 1-valued head to 0, and negative clauses can never
    break when only 1s turn to 0.  Chains are capped at k flips.
    """
    f, k = inst.base, inst.k
    counter = _NodeCounter(cfg.node_budget)
    w0 = weight(f)
    for x in range(len(f)):
        if f[x] != 1 or k < 1:
            continue
        bits = list(f)
        bits[x] = 0
        flips = 1
        counter.visit()
        while True:
            violated = None
            for cl in clauses:
                if not _clauses_ok(bits, [cl]):
                    violated = cl
                    break
            if violated is None:
                witness = tuple(bits)
                if weight(witness) < w0:
                    return Decision(
                        True,
                        witness,
                        SolveStats("ihsb", counter.nodes, counter.branch_points),
                    )
                break
            if not isinstance(violated, Impl) or flips == k:
                break  # dead end: unit broken, or chain budget exhausted
            bits[violated.head] = 0
            flips += 1
            counter.visit()
    return Decision(False, None, SolveStats("ihsb", counter.nodes, counter.branch_points))


def horn_bst(inst, cfg=SolveConfig()):
    """Bounded search tree for min-closed languages, flipping 1s to 0s only.

    For each 1-valued start variable: flip it, then repeatedly pick the
    lowest-index unsatisfied constraint and branch on each of its 1-valued
    scope variables, to depth k flips.  Any satisfying assignment reached is
    strictly lighter because no 0 ever becomes 1.
    """
    formula, f, k = inst.formula, inst.base, inst.k
    _require(
        all(classify.is_horn(r) for r in formula.relations),
        "horn_bst", "every relation to be min-closed",
    )
    counter = _NodeCounter(cfg.node_budget)
    constraints = formula.constraints

    def first_violated(bits):
        for c in constraints:
            if tuple(bits[i] for i in c.scope) not in c.relation.tuples:
                return c
        return None

    def descend(bits, flips):
        counter.visit()
        c = first_violated(bits)
        if c is None:
            return tuple(bits)
        if flips == k:
            return None
        candidates = [v for v in _scope_vars(c) if bits[v] == 1]
        if len(candidates) > 1:
            counter.branch_points += 1
        for v in candidates:
            bits[v] = 0
            found = descend(bits, flips + 1)
            if found is not None:
                return found
            bits[v] = 1
        return None

    if k >= 1:
        for x in range(len(f)):
            if f[x] != 1:
                continue
            bits = list(f)
            bits[x] = 0
            found = descend(bits, 1)
            if found is not None:
                return Decision(
                    True, found, SolveStats("horn_bst", counter.nodes, counter.branch_points)
                )
    return Decision(False, None, SolveStats("horn_bst", counter.nodes, counter.branch_points))


def flip_sep_bst(inst, cfg=SolveConfig()):
    """Bounded search tree for flip-separable languages.

    Each variable is flipped at most once per branch (in either direction).
    At a node: a satisfying assignment is reported iff lighter, otherwise the
    branch is abandoned; an unsatisfied constraint with some unflipped
    variable triggers branching on its unflipped scope variables; an
    unsatisfied assignment with no such constraint is a dead branch.  Depth
    is capped at k flips.  For flip-separable relations the improving
    solution of minimal distance is guaranteed to appear in this tree.
    """
    formula, f, k = inst.formula, inst.base, inst.k
    _require(
        all(classify.is_flip_separable(r) for r in formula.relations),
        "flip_sep_bst", "every relation to be flip separable",
    )
    counter = _NodeCounter(cfg.node_budget)
    constraints = formula.constraints
    w0 = weight(f)

    def survey(bits, flipped):
        """(satisfying?, lowest-index unsatisfied constraint owning an
        unflipped variable)."""
        satisfying = True
        branchable = None
        for c in constraints:
            if tuple(bits[i] for i in c.scope) in c.relation.tuples:
                continue
            satisfying = False
            if branchable is None and any(v not in flipped for v in c.scope):
                branchable = c
                break
        return satisfying, branchable

    def descend(bits, flipped):
        counter.visit()
        satisfying, branchable = survey(bits, flipped)
        if satisfying:
            witness = tuple(bits)
            return witness if weight(witness) < w0 else None
        if branchable is None or len(flipped) == k:
            return None
        candidates = [v for v in _scope_vars(branchable) if v not in flipped]
        if len(candidates) > 1:
            counter.branch_points += 1
        for v in candidates:
            bits[v] ^= 1
            flipped.add(v)
            found = descend(bits, flipped)
            if found is not None:
                return found
            flipped.remove(v)
            bits[v] ^= 1
        return None

    if k >= 1:
        for x in range(len(f)):
            if f[x] != 1:
                continue
            bits = list(f)
            bits[x] ^= 1
            found = descend(bits, {x})
            if found is not None:
                return Decision(
                    True,
                    found,
                    SolveStats("flip_sep_bst", counter.nodes, counter.branch_points),
                )
    return Decision(
        False, None, SolveStats("flip_sep_bst", counter.nodes, counter.branch_points)
    )


def width2_components(inst, cfg=SolveConfig()):
    """Polynomial route for equality/disequality languages.

    Builds a graph with an edge wherever some constraint entails = or != on
    a coordinate pair, and answers YES iff some connected component of at
    most k variables holds more 1s than 0s; flipping that whole component is
    then a lighter solution.  The edge set refines per coordinate pair so
    that components are exactly the minimal flip-closed units even for
    relations of arity > 2.  Runs in time independent of k; ``stats.nodes``
    records the operation count (variables + entailed edges processed).
    """
    formula, f, k = inst.formula, inst.base, inst.k
    _require(
        all(classify.is_width2_affine(r) for r in formula.relations),
        "width2", "every relation to be width-2 affine",
    )
    n = len(formula.variables)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ops = n
    entailed = {r: classify.width2_entailed_pairs(r) for r in formula.relations}
    for c in formula.constraints:
        for i, j, _kind in entailed[c.relation]:
            u, v = find(c.scope[i]), find(c.scope[j])
            if u != v:
                parent[u] = v
            ops += 1
    components = {}
    for v in range(n):
        components.setdefault(find(v), []).append(v)
    best = None
    for comp in components.values():
        ones = sum(f[v] for v in comp)
        if len(comp) <= k and 2 * ones > len(comp):
            if best is None or min(comp) < min(best):
                best = comp
    if best is None:
        return Decision(False, None, SolveStats("width2", ops))
    bits = list(f)
    for v in best:
        bits[v] ^= 1
    return Decision(True, tuple(bits), SolveStats("width2", ops))


_PRECONDITIONS = {
    "ihsb": lambda cls: all(c.ihsb_minus for c in cls),
    "width2": lambda cls: all(c.width2_affine for c in cls),
    "horn_bst": lambda cls: all(c.horn for c in cls),
    "flip_sep_bst": lambda cls: all(c.flip_separable for c in cls),
    "brute_force": lambda cls: True,
}


def solve(inst, cfg=SolveConfig()):
    """Classify the instance's language and dispatch to the best algorithm
    (precedence: ihsb, width2, horn_bst, flip_sep_bst, brute force).

    The returned decision always matches ``brute_force_ls`` on the same
    instance; every YES witness is re-checked before it is returned.
    """
    violations = validate_instance(inst)
    if violations:
        raise InvalidInstanceError(violations)
    relations = inst.formula.relations
    if relations:
        verdict = classify.classify_language(relations)
        classes = [verdict.per_relation[r.name] for r in relations]
        algorithm = cfg.force_algorithm or verdict.algorithm
    else:
        # no constraints: vacuously width-2 affine, every variable its own
        # component
        classes = []
        algorithm = cfg.force_algorithm or "width2"
    if algorithm not in _PRECONDITIONS:
        raise ValueError(f"unknown algorithm tag {algorithm!r}")
    if not _PRECONDITIONS[algorithm](classes):
        raise WrongAlgorithmError(
            f"algorithm {algorithm!r} does not fit this instance's language"
        )
    if algorithm == "ihsb":
        compiled = {r: ihsb_compile(r) for r in relations}
        decision = ihsb_propagate(inst, _instance_clauses(inst.formula, compiled), cfg)
    elif algorithm == "width2":
        decision = width2_components(inst, cfg)
    elif algorithm == "horn_bst":
        decision = horn_bst(inst, cfg)
    elif algorithm == "flip_sep_bst":
        decision = flip_sep_bst(inst, cfg)
    else:
        decision = brute_force_ls(inst, subset_budget=cfg.node_budget)
    if decision.answer:
        w = decision.witness
        if (
            w is None
            or not satisfies(inst.formula, w)
            or not weight(w) < weight(inst.base)
            or not dist(w, inst.base) <= inst.k
        ):
            raise RuntimeError(
                f"internal error: algorithm {algorithm!r} produced an invalid witness"
            )
    return decision
