"""Data model for Boolean relations, formulas, assignments, and local-search
instances, plus the exhaustive oracle that embodies the decision problem.

The problem solved throughout this package: given a formula over a fixed set
of Boolean relations, a satisfying assignment ``f``, and a distance budget
``k``, decide whether a satisfying assignment of strictly smaller Hamming
weight exists within Hamming distance ``k`` of ``f``.

All types here are immutable after construction and every operation is a
pure function, so everything is safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

#: Largest supported relation arity; keeps 2**arity membership tables small
#: and lets the classifiers stay exhaustive.
ARITY_MAX = 16

#: Default cap on the number of flip sets ``brute_force_ls`` will enumerate.
DEFAULT_SUBSET_BUDGET = 10_000_000

#: A total 0/1 assignment, one entry per formula variable (same order as
#: ``Formula.variables``).
Assignment = tuple

_CHUNK_ROWS = 1 << 16


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured budget (distinct from NO)."""


class InvalidInstanceError(ValueError):
    """A local-search instance failed validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid instance: " + "; ".join(self.violations))


@dataclass(frozen=True)
class Relation:
    """A named r-ary Boolean relation stored as an explicit set of tuples.

    Tuples are plain 0/1 tuples; coordinate 0 corresponds to the leftmost
    character of the bit-string encoding used in instance files.
    """

    name: str
    arity: int
    tuples: frozenset

    def __post_init__(self):
        if not 1 <= self.arity <= ARITY_MAX:
            raise ValueError(f"arity must be in 1..{ARITY_MAX}, got {self.arity}")
        norm = frozenset(tuple(int(b) for b in t) for t in self.tuples)
        for t in norm:
            if len(t) != self.arity:
                raise ValueError(f"relation {self.name!r}: tuple {t} has wrong length")
            if any(b not in (0, 1) for b in t):
                raise ValueError(f"relation {self.name!r}: non-Boolean tuple {t}")
        object.__setattr__(self, "tuples", norm)

    @classmethod
    def from_bits(cls, name, *bitstrings):
        """Build a relation from bit strings such as ``"01", "10", "11"``."""
        if not bitstrings:
            raise ValueError("at least one bit string required to fix the arity")
        arity = len(bitstrings[0])
        return cls(name, arity, frozenset(tuple(int(c) for c in s) for s in bitstrings))

    def __contains__(self, t):
        return tuple(t) in self.tuples

    def lookup_table(self):
        """Membership table indexed by the tuple read as a binary number
        (coordinate 0 is the most significant bit)."""
        lut = np.zeros(1 << self.arity, dtype=np.uint8)
        for t in self.tuples:
            code = 0
            for b in t:
                code = (code << 1) | b
            lut[code] = 1
        return lut


@dataclass(frozen=True)
class Constraint:
    """A relation applied to an ordered scope of variable indices.

    Repeated variables within a scope are permitted (coordinate
    identification).  Scope indices are not range-checked here; see
    ``validate_instance``.
    """

    relation: Relation
    scope: tuple

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(int(i) for i in self.scope))
        if len(self.scope) != self.relation.arity:
            raise ValueError(
                f"scope length {len(self.scope)} != arity {self.relation.arity} "
                f"of relation {self.relation.name!r}"
            )


@dataclass(frozen=True)
class Formula:
    """An ordered variable list plus a list of constraints."""

    variables: tuple
    constraints: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(str(v) for v in self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")

    @property
    def relations(self):
        """The distinct relations used by this formula, in first-use order."""
        seen = []
        for c in self.constraints:
            if c.relation not in seen:
                seen.append(c.relation)
        return tuple(seen)

    def index_of(self, name):
        return self.variables.index(name)


@dataclass(frozen=True)
class LsInstance:
    """A formula, a satisfying base assignment, and a distance budget.

    The constructor itself is permissive so that ``validate_instance`` can
    report problems as data; use :meth:`checked` (or the file loader / the
    gadget generators) to construct validated instances.
    """

    formula: Formula
    base: Assignment
    k: int

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(b) for b in self.base))
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def checked(cls, formula, base, k):
        inst = cls(formula, base, k)
        violations = validate_instance(inst)
        if violations:
            raise InvalidInstanceError(violations)
        return inst


@dataclass(frozen=True)
class SolveStats:
    """Instrumentation attached to every decision."""

    algorithm: str
    nodes: int
    branch_points: int = 0


@dataclass(frozen=True)
class Decision:
    """Outcome of a local-search query.

    If ``answer`` is True, ``witness`` is a satisfying assignment strictly
    lighter than the base and within distance k of it.
    """

    answer: bool
    witness: Assignment | None
    stats: SolveStats


def weight(a):
    """Hamming weight: the number of variables assigned 1."""
    return sum(a)


def dist(a, b):
    """Hamming distance between two assignments of equal length."""
    if len(a) != len(b):
        raise ValueError(f"assignment length mismatch: {len(a)} != {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def satisfies(formula, a):
    """True iff every constraint's scope projection is in its relation."""
    if len(a) != len(formula.variables):
        raise ValueError(
            f"invalid assignment: length {len(a)} != {len(formula.variables)} variables"
        )
    for c in formula.constraints:
        if tuple(a[i] for i in c.scope) not in c.relation.tuples:
            return False
    return True


def validate_instance(inst):
    """Return a list of violation strings; empty iff the instance is valid.

    Tags (stable prefixes): ``bad-scope``, ``empty-relation``,
    ``invalid-assignment``, ``bad-budget``, ``base-not-satisfying``.
    """
    violations = []
    n = len(inst.formula.variables)
    scopes_ok = True
    for idx, c in enumerate(inst.formula.constraints):
        for i in c.scope:
            if not 0 <= i < n:
                violations.append(f"bad-scope: constraint {idx} references index {i}")
                scopes_ok = False
        if not c.relation.tuples:
            violations.append(
                f"empty-relation: constraint {idx} uses relation "
                f"{c.relation.name!r} with no tuples"
            )
    lengths_ok = len(inst.base) == n
    if not lengths_ok:
        violations.append(
            f"invalid-assignment: base has {len(inst.base)} bits for {n} variables"
        )
    if any(b not in (0, 1) for b in inst.base):
        violations.append("invalid-assignment: base contains non-Boolean values")
        lengths_ok = False
    if inst.k < 0:
        violations.append(f"bad-budget: k must be non-negative, got {inst.k}")
    if scopes_ok and lengths_ok:
        for idx, c in enumerate(inst.formula.constraints):
            if tuple(inst.base[i] for i in c.scope) not in c.relation.tuples:
                violations.append(f"base-not-satisfying: constraint {idx}")
                break
    return violations


def _chunked(iterable, size):
    it = iter(iterable)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _constraint_tables(formula):
    return [
        (np.array(c.scope, dtype=np.intp), c.relation.lookup_table())
        for c in formula.constraints
    ]


def _valid_rows(cand, w0, tables):
    """Boolean mask over rows of ``cand`` (assignments) that satisfy every
    constraint and weigh strictly less than ``w0``."""
    nrows = cand.shape[0]
    rows = np.flatnonzero(cand.sum(axis=1, dtype=np.int64) < w0)
    sub = cand[rows]
    for scope, lut in tables:
        if rows.size == 0:
            break
        code = np.zeros(rows.size, dtype=np.int32)
        for i in scope:
            code = (code << 1) | sub[:, i]
        ok = lut[code].astype(bool)
        rows = rows[ok]
        sub = sub[ok]
    mask = np.zeros(nrows, dtype=bool)
    mask[rows] = True
    return mask


def brute_force_ls(inst, subset_budget=DEFAULT_SUBSET_BUDGET):
    """Exhaustive oracle for the local-search decision.

    Enumerates every variable subset of size <= k in canonical order (by
    size, then lexicographically on the sorted index tuple), flips it in the
    base assignment, and returns YES with the first flip that yields a
    strictly lighter satisfying assignment.  ``stats.nodes`` counts flip sets
    up to and including the witness (all of them on a NO answer), making the
    witness reproducible as a regression fixture.

    Raises :class:`BudgetExceededError` when the subset count exceeds
    ``subset_budget`` -- deliberately distinct from answering NO.
    """
    formula, base, k = inst.formula, inst.base, inst.k
    n = len(formula.variables)
    kk = min(max(k, 0), n)
    total = sum(comb(n, s) for s in range(kk + 1))
    if total > subset_budget:
        raise BudgetExceededError(
            f"{total} flip sets of size <= {kk} over {n} variables exceed "
            f"the budget of {subset_budget}"
        )
    base_arr = np.array(base, dtype=np.uint8)
    w0 = int(base_arr.sum())
    tables = _constraint_tables(formula)
    if kk == n:
        return _brute_force_all_masks(n, base_arr, w0, tables)
    return _brute_force_by_size(n, kk, base_arr, w0, tables)


def _brute_force_by_size(n, kk, base_arr, w0, tables):
    examined = 0
    for s in range(kk + 1):
        offset = 0
        for block in _chunked(itertools.combinations(range(n), s), _CHUNK_ROWS):
            combos = np.array(block, dtype=np.intp).reshape(len(block), s)
            cand = np.repeat(base_arr[None, :], len(block), axis=0)
            if s:
                cand[np.arange(len(block))[:, None], combos] ^= 1
            mask = _valid_rows(cand, w0, tables)
            hits = np.flatnonzero(mask)
            if hits.size:
                hit = int(hits[0])
                witness = tuple(int(b) for b in cand[hit])
                nodes = examined + offset + hit + 1
                return Decision(True, witness, SolveStats("brute_force", nodes))
            offset += len(block)
        examined += comb(n, s)
    return Decision(False, None, SolveStats("brute_force", examined))


def _brute_force_all_masks(n, base_arr, w0, tables):
    # k >= n: every subset qualifies, so enumerate bitmasks instead of
    # materializing itertools combinations.  With coordinate 0 as the most
    # significant bit, the lexicographically first subset of a given size is
    # the numerically largest mask.
    size = 1 << n
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    best_key = None
    best_witness = None
    best_pc = best_mask = 0
    for lo in range(0, size, _CHUNK_ROWS):
        m = np.arange(lo, min(lo + _CHUNK_ROWS, size), dtype=np.int64)
        flips = ((m[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        cand = flips ^ base_arr[None, :]
        mask = _valid_rows(cand, w0, tables)
        idx = np.flatnonzero(mask)
        if idx.size:
            pc = flips[idx].sum(axis=1, dtype=np.int64)
            keys = pc * size + (size - 1 - m[idx])
            j = int(np.argmin(keys))
            if best_key is None or int(keys[j]) < best_key:
                best_key = int(keys[j])
                best_witness = tuple(int(b) for b in cand[idx[j]])
                best_pc = int(pc[j])
                best_mask = int(m[idx[j]])
    if best_key is None:
        return Decision(False, None, SolveStats("brute_force", size))
    lex_before = 0
    for lo in range(0, size, _CHUNK_ROWS):
        m = np.arange(lo, min(lo + _CHUNK_ROWS, size), dtype=np.int64)
        flips = ((m[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        pc = flips.sum(axis=1, dtype=np.int64)
        lex_before += int(np.count_nonzero((pc == best_pc) & (m > best_mask)))
    nodes = sum(comb(n, s) for s in range(best_pc)) + lex_before + 1
    return Decision(True, best_witness, SolveStats("brute_force", nodes))
