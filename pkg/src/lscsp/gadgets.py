"""Reduction gadgets: generators that translate graph problems and other
local-search instances into hard test families with known answers.

Every generator returns ``(instance, metadata)`` where the metadata block is
a JSON-ready dict describing the parameters and, when it follows from the
source, the expected answer.  All emitted base assignments satisfy their
formulas (the constructors validate this).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import classify
from .catalog import IMPL, NEQ, ONE_IN_THREE
from .core import Constraint, Formula, LsInstance, Relation


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n, pairs):
        return cls(n, frozenset(tuple(p) for p in pairs))

    @property
    def m(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def neighbors(self, v):
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)


def gen_vc_ls_from_clique(graph, x, t):
    """Vertex-cover local-search instance over OR constraints that is a YES
    instance exactly when ``graph`` has a t-clique containing vertex ``x``.

    Uses d=(t-1)/2 copies per vertex (d-1 for x), one variable per edge, a
    constraint ``u_e OR v_i`` per incidence, the all-edges-on base, and
    budget k = t(t-1)-1.
    """
    if t < 3 or t % 2 == 0:
        raise ValueError(f"t must be an odd integer >= 3, got {t}")
    if not 0 <= x < graph.n:
        raise ValueError(f"vertex {x} out of range for n={graph.n}")
    d = (t - 1) // 2
    edges = graph.sorted_edges()
    or_rel = Relation("OR", 2, frozenset({(0, 1), (1, 0), (1, 1)}))
    variables = [f"u{u}_{v}" for u, v in edges]
    edge_index = {e: i for i, e in enumerate(edges)}
    copy_index = {}
    for v in range(graph.n):
        copies = d - 1 if v == x else d
        for i in range(1, copies + 1):
            copy_index[(v, i)] = len(variables)
            variables.append(f"v{v}_{i}")
    constraints = []
    for e in edges:
        for endpoint in e:
            copies = d - 1 if endpoint == x else d
            for i in range(1, copies + 1):
                constraints.append(
                    Constraint(or_rel, (edge_index[e], copy_index[(endpoint, i)]))
                )
    base = [0] * len(variables)
    for e in edges:
        base[edge_index[e]] = 1
    k = t * (t - 1) - 1
    inst = LsInstance.checked(
        Formula(tuple(variables), tuple(constraints)), tuple(base), k
    )
    meta = {
        "generator": "clique-vc",
        "params": {"n": graph.n, "m": graph.m, "x": x, "t": t},
        "derived": {"variables": len(variables), "k": k},
        "expected": "YES iff the graph has a t-clique containing x",
    }
    return inst, meta


@dataclass(frozen=True)
class NonHornWitness:
    """Block structure extracted from a min-closure violation of a relation.

    Coordinates are split by the violating pair (a, b): X where (a,b)=(1,0),
    Y where (0,1), W1 where (1,1), W0 where (0,0).  The induced 4-ary
    relation R'(x, y, w0, w1) then contains (0,1,0,1) and (1,0,0,1) but not
    (0,0,0,1).
    """

    relation: Relation
    x_coords: tuple
    y_coords: tuple
    w0_coords: tuple
    w1_coords: tuple

    def expand_scope(self, x, y, w0, w1):
        """Scope for an R1 constraint realizing R'(x, y, w0, w1)."""
        picks = {}
        for i in self.x_coords:
            picks[i] = x
        for i in self.y_coords:
            picks[i] = y
        for i in self.w0_coords:
            picks[i] = w0
        for i in self.w1_coords:
            picks[i] = w1
        return tuple(picks[i] for i in range(self.relation.arity))

    def rprime(self):
        """The induced 4-ary relation, materialized for case analysis."""
        tuples = set()
        for vals in itertools.product((0, 1), repeat=4):
            # placing the four values by block yields the source tuple
            if self.expand_scope(*vals) in self.relation.tuples:
                tuples.add(vals)
        return Relation(f"{self.relation.name}_collapsed", 4, frozenset(tuples))


def find_non_horn_witness(rel):
    """Read the block structure off the canonical min-closure violation."""
    violation = classify.horn_violation(rel)
    if violation is None:
        raise ValueError(f"relation {rel.name!r} is min-closed")
    a, b = violation
    blocks = {(1, 0): [], (0, 1): [], (0, 0): [], (1, 1): []}
    for i, pair in enumerate(zip(a, b)):
        blocks[pair].append(i)
    w = NonHornWitness(
        relation=rel,
        x_coords=tuple(blocks[(1, 0)]),
        y_coords=tuple(blocks[(0, 1)]),
        w0_coords=tuple(blocks[(0, 0)]),
        w1_coords=tuple(blocks[(1, 1)]),
    )
    rp = w.rprime().tuples
    assert (0, 1, 0, 1) in rp and (1, 0, 0, 1) in rp and (0, 0, 0, 1) not in rp
    return w


@dataclass(frozen=True)
class NonFlipSepWitness:
    """A tuple with nested flip sets whose difference is not a flip set."""

    relation: Relation
    tuple_: tuple
    s1: frozenset
    s2: frozenset


def find_non_flipsep_witness(rel):
    violation = classify.flipsep_violation(rel)
    if violation is None:
        raise ValueError(f"relation {rel.name!r} is flip separable")
    t, s1, s2 = violation
    return NonFlipSepWitness(rel, t, s1, s2)


def _require_or_language(inst):
    for c in inst.formula.constraints:
        if c.relation.arity != 2 or c.relation.tuples != frozenset(
            {(0, 1), (1, 0), (1, 1)}
        ):
            raise ValueError("source instance must use only binary OR constraints")


def gen_w1_reduction(r1, r2, src):
    """Translate an OR-constraint instance into one over {r1, r2}, where r1
    is not min-closed and r2 is not flip separable.

    Case 1 (the collapsed relation accepts (1,1,0,1)): OR is simulated
    directly with constant-role variables q0/q1, budget unchanged.  Case 2
    (it does not, so the collapsed relation on (x,y,0,1) is disequality):
    every source variable is tripled and OR is simulated through the
    non-flip-separable witness of r2, budget 3k.
    """
    _require_or_language(src)
    w = find_non_horn_witness(r1)
    fsw = find_non_flipsep_witness(r2)
    rp = w.rprime()
    case = 1 if (1, 1, 0, 1) in rp.tuples else 2
    k = src.k
    src_vars = src.formula.variables
    f1 = dict(zip(src_vars, src.base))

    if case == 1:
        reach = k + 1
        new_k = k
        variables = list(src_vars)
    else:
        reach = 3 * k + 1
        new_k = 3 * k
        variables = [f"{v}:{c}" for v in src_vars for c in (1, 2, 3)]
    q0 = {j: f"q0:{j}" for j in range(1, reach + 1)}
    q1 = {j: f"q1:{j}" for j in range(1, reach + 1)}
    variables += [q0[j] for j in range(1, reach + 1)]
    variables += [q1[j] for j in range(1, reach + 1)]
    index = {v: i for i, v in enumerate(variables)}

    def rp_constraint(x, y, w0, w1):
        scope = w.expand_scope(index[x], index[y], index[w0], index[w1])
        return Constraint(r1, scope)

    constraints = []
    # constant gadget: ties every q1 to 1 once some q0 stays 0 and some q1
    # stays 1, which the distance budget guarantees
    for a in range(1, reach + 1):
        for b in range(1, reach + 1):
            for c in range(1, reach + 1):
                constraints.append(rp_constraint(q1[a], q0[b], q0[b], q1[c]))
    if case == 1:
        for c in src.formula.constraints:
            u, v = (src_vars[i] for i in c.scope)
            for j in range(1, reach + 1):
                constraints.append(rp_constraint(u, v, q0[j], q1[1]))
    else:
        for v in src_vars:
            for ell in (1, 2):
                for j in range(1, reach + 1):
                    constraints.append(
                        rp_constraint(f"{v}:{ell}", f"{v}:3", q0[j], q1[1])
                    )
        s, s1, s2 = fsw.tuple_, fsw.s1, fsw.s2
        for c in src.formula.constraints:
            xv, yv = (src_vars[i] for i in c.scope)
            for j in range(1, reach + 1):
                scope = []
                for i in range(r2.arity):
                    if i in s1:
                        scope.append(f"{xv}:1" if s[i] == 0 else f"{xv}:3")
                    elif i in s2:
                        scope.append(f"{yv}:1" if s[i] == 1 else f"{yv}:3")
                    else:
                        scope.append(q1[1] if s[i] == 1 else q0[j])
                constraints.append(Constraint(r2, tuple(index[v] for v in scope)))

    base = [0] * len(variables)
    if case == 1:
        for v in src_vars:
            base[index[v]] = f1[v]
    else:
        for v in src_vars:
            base[index[f"{v}:1"]] = f1[v]
            base[index[f"{v}:2"]] = f1[v]
            base[index[f"{v}:3"]] = 1 - f1[v]
    for j in range(1, reach + 1):
        base[index[q1[j]]] = 1

    inst = LsInstance.checked(
        Formula(tuple(variables), tuple(constraints)), tuple(base), new_k
    )
    meta = {
        "generator": "w1",
        "params": {"r1": r1.name, "r2": r2.name, "src_k": k},
        "derived": {
            "case": case,
            "k": new_k,
            "variables": len(variables),
            "blocks": {
                "x": list(w.x_coords),
                "y": list(w.y_coords),
                "w0": list(w.w0_coords),
                "w1": list(w.w1_coords),
            },
            "flip_witness": {
                "tuple": "".join(str(b) for b in fsw.tuple_),
                "s1": sorted(i + 1 for i in fsw.s1),
                "s2": sorted(i + 1 for i in fsw.s2),
            },
        },
        "expected": "answer equals the source instance's answer",
    }
    return inst, meta


_RPRIME_REQUIRED = {(1, 1, 1), (0, 1, 0), (1, 0, 0), (0, 0, 0)}
_RPRIME_FORBIDDEN = (1, 1, 0)

#: Role order for the coordinate-role search, fixed for determinism.
_ROLES = ("x", "y", "z", "c0", "c1")


@dataclass(frozen=True)
class RPrime:
    """A ternary relation squeezed out of a min-closed, non-implicative
    relation by assigning each coordinate a role (x, y, z, constant 0/1).

    The derived relation contains (1,1,1), (0,1,0), (1,0,0), (0,0,0) and
    excludes (1,1,0), which is what the dominating-set gadget needs.
    """

    relation: Relation
    roles: tuple
    source: Relation

    def expand_scope(self, x, y, z, c0, c1):
        picks = {"x": x, "y": y, "z": z, "c0": c0, "c1": c1}
        return tuple(picks[role] for role in self.roles)


def _materialize_roles(rel, roles):
    tuples = set()
    for vals in itertools.product((0, 1), repeat=3):
        assigned = {"x": vals[0], "y": vals[1], "z": vals[2], "c0": 0, "c1": 1}
        if tuple(assigned[role] for role in roles) in rel.tuples:
            tuples.add(vals)
    return tuples


def derive_r_prime(rel):
    """Search coordinate-role assignments (lexicographic over the role order
    x, y, z, c0, c1) for one inducing a valid ternary relation."""
    if not classify.is_horn(rel):
        raise ValueError(f"relation {rel.name!r} is not min-closed")
    if classify.is_ihsb_minus(rel):
        raise ValueError(
            f"relation {rel.name!r} is expressible with units/implications/"
            f"negative clauses; no ternary core exists"
        )
    for roles in itertools.product(_ROLES, repeat=rel.arity):
        tuples = _materialize_roles(rel, roles)
        if _RPRIME_REQUIRED <= tuples and _RPRIME_FORBIDDEN not in tuples:
            derived = Relation(f"{rel.name}_core", 3, frozenset(tuples))
            return RPrime(derived, roles, rel)
    raise RuntimeError(
        f"no role assignment found for {rel.name!r}; this contradicts the "
        f"classifier (min-closed but not implicative) and indicates a bug"
    )


def derive_implication(rp):
    """Identification pattern of the derived ternary relation that yields
    exactly the implication {00, 01, 11}.

    Tries (x,x,y) when (0,0,1) is present; otherwise min-closure guarantees
    one of (x,y,x) and (y,x,x) works.
    """
    rel = rp.relation if isinstance(rp, RPrime) else rp
    ts = rel.tuples
    if (0, 0, 1) in ts:
        pattern = ("x", "x", "y")
    elif (1, 0, 1) not in ts:
        pattern = ("x", "y", "x")
    else:
        pattern = ("y", "x", "x")
    induced = {
        (a, b)
        for a in (0, 1)
        for b in (0, 1)
        if tuple({"x": a, "y": b}[p] for p in pattern) in ts
    }
    if induced != {(0, 0), (0, 1), (1, 1)}:
        raise RuntimeError(
            f"identification {pattern} of {rel.name!r} is not the implication; "
            f"the relation violates the derived-core contract"
        )
    return pattern


def gen_domset_reduction(graph, t, rp):
    """Instance over {derived ternary relation, implication} that is YES
    exactly when ``graph`` has a dominating set of size at most t.

    Per vertex: S = 3m copies tied together by implications; per vertex a
    chain through its neighbors' first copies that forces the special
    variable x to 1 whenever some vertex is undominated; x implies every
    variable.  Base is all-ones, budget k = S*t + S - 1.
    """
    if graph.m < 1:
        raise ValueError("graph must have at least one edge")
    if t < 0:
        raise ValueError("t must be non-negative")
    rel = rp.relation if isinstance(rp, RPrime) else rp
    ts = rel.tuples
    if not (_RPRIME_REQUIRED <= ts and _RPRIME_FORBIDDEN not in ts):
        raise ValueError(
            f"relation {rel.name!r} lacks the required ternary-core tuples"
        )
    n, m = graph.n, graph.m
    S = 3 * m
    variables = ["x"]
    copy_index = {}
    for i in range(n):
        for j in range(1, S + 1):
            copy_index[(i, j)] = len(variables)
            variables.append(f"x{i}_{j}")
    chain_index = {}
    for i in range(n):
        for j in range(1, len(graph.neighbors(i)) + 1):
            chain_index[(i, j)] = len(variables)
            variables.append(f"y{i}_{j}")
    constraints = []
    for i in range(n):
        for j in range(1, S + 1):
            for j2 in range(1, S + 1):
                if j != j2:
                    constraints.append(
                        Constraint(IMPL, (copy_index[(i, j)], copy_index[(i, j2)]))
                    )
    for i in range(n):
        nbrs = graph.neighbors(i)
        if not nbrs:
            # isolated vertex: it must belong to every dominating set
            constraints.append(Constraint(IMPL, (copy_index[(i, 1)], 0)))
            continue
        constraints.append(
            Constraint(IMPL, (copy_index[(nbrs[0], 1)], chain_index[(i, 1)]))
        )
        for j in range(2, len(nbrs) + 1):
            constraints.append(
                Constraint(
                    rel,
                    (
                        copy_index[(nbrs[j - 1], 1)],
                        chain_index[(i, j - 1)],
                        chain_index[(i, j)],
                    ),
                )
            )
        constraints.append(
            Constraint(rel, (copy_index[(i, 1)], chain_index[(i, len(nbrs))], 0))
        )
    for z in range(1, len(variables)):
        constraints.append(Constraint(IMPL, (0, z)))
    base = (1,) * len(variables)
    k = S * t + S - 1
    inst = LsInstance.checked(Formula(tuple(variables), tuple(constraints)), base, k)
    meta = {
        "generator": "domset",
        "params": {"n": n, "m": m, "t": t, "relation": rel.name},
        "derived": {"S": S, "variables": len(variables), "k": k},
        "expected": "YES iff the graph has a dominating set of size <= t",
    }
    return inst, meta


def gen_pad_rprime_to_r(src, rp):
    """Rewrite an instance over {derived ternary relation, implication} into
    one over the original relation alone, preserving the answer and budget.

    Implications are first realized through the :func:`derive_implication`
    pattern; each ternary constraint is padded back to the source relation
    with its own constant pair, and anchor constraints freeze all pairs: any
    solution within distance k agrees with the base on every pad variable.
    """
    rel = rp.source
    pattern = derive_implication(rp)
    ternary = []
    impl_tuples = frozenset({(0, 0), (0, 1), (1, 1)})
    for c in src.formula.constraints:
        if c.relation.arity == 2 and c.relation.tuples == impl_tuples:
            u, v = c.scope
            ternary.append(tuple({"x": u, "y": v}[p] for p in pattern))
        elif c.relation.arity == 3 and c.relation.tuples == rp.relation.tuples:
            ternary.append(tuple(c.scope))
        else:
            raise ValueError(
                f"source constraint uses {c.relation.name!r}, which is neither "
                f"the derived ternary relation nor the implication"
            )
    p = len(ternary)
    npairs = max(p, src.k + 1)
    variables = list(src.formula.variables)
    pad0, pad1 = {}, {}
    for i in range(1, npairs + 1):
        pad0[i] = len(variables)
        variables.append(f"pad0_{i}")
        pad1[i] = len(variables)
        variables.append(f"pad1_{i}")
    constraints = [
        Constraint(rel, rp.expand_scope(a, b, c, pad0[i], pad1[i]))
        for i, (a, b, c) in enumerate(ternary, start=1)
    ]
    for i in range(1, npairs + 1):
        for j in range(1, npairs + 1):
            constraints.append(
                Constraint(
                    rel, rp.expand_scope(pad0[i], pad0[i], pad0[j], pad0[j], pad1[j])
                )
            )
            constraints.append(
                Constraint(
                    rel, rp.expand_scope(pad1[j], pad1[j], pad1[i], pad0[j], pad1[j])
                )
            )
    base = list(src.base) + [0, 1] * npairs
    inst = LsInstance.checked(
        Formula(tuple(variables), tuple(constraints)), tuple(base), src.k
    )
    meta = {
        "generator": "pad",
        "params": {"relation": rel.name, "k": src.k},
        "derived": {
            "pairs": npairs,
            "padded_constraints": p,
            "anchor_constraints": 2 * npairs * npairs,
            "pattern": "".join(pattern),
        },
        "expected": "answer equals the source instance's answer",
    }
    return inst, meta


def gen_one_in_three_from_vc(src, scale=None):
    """Translate an OR-constraint instance into one over {1-in-3, !=}.

    Each source variable v becomes a flag x0_v (the negation of v) plus a
    bundle of copies kept opposite to x0_v by disequalities -- S-2m copies
    when the base sets v, S copies otherwise -- and each OR constraint
    becomes a 1-in-3 constraint on the two flags and a slack variable.  With
    the default S = 10*n^2*m^2 the answer provably equals the source's; an
    explicit ``scale`` override emits the same construction for test use
    without that guarantee.  Budget k' = k(S+1) + m.
    """
    _require_or_language(src)
    n = len(src.formula.variables)
    m = len(src.formula.constraints)
    if m < 1:
        raise ValueError("source instance must have at least one constraint")
    S = 10 * n * n * m * m if scale is None else int(scale)
    if S < 2 * m + 2:
        raise ValueError(f"scale override must be at least 2m+2 = {2 * m + 2}, got {S}")
    src_vars = src.formula.variables
    f1 = dict(zip(src_vars, src.base))
    variables = []
    flag_index = {}
    copies = {}
    for v in src_vars:
        flag_index[v] = len(variables)
        variables.append(f"x0_{v}")
        count = S - 2 * m if f1[v] == 1 else S
        copies[v] = []
        for i in range(1, count + 1):
            copies[v].append(len(variables))
            variables.append(f"x1_{v}_{i}")
    slack_index = {}
    for ci in range(m):
        slack_index[ci] = len(variables)
        variables.append(f"y_{ci}")
    constraints = []
    for v in src_vars:
        for idx in copies[v]:
            constraints.append(Constraint(NEQ, (flag_index[v], idx)))
    for ci, c in enumerate(src.formula.constraints):
        u, v = (src_vars[i] for i in c.scope)
        constraints.append(
            Constraint(ONE_IN_THREE, (flag_index[u], flag_index[v], slack_index[ci]))
        )
    base = [0] * len(variables)
    for v in src_vars:
        base[flag_index[v]] = 1 - f1[v]
        for idx in copies[v]:
            base[idx] = f1[v]
    for ci, c in enumerate(src.formula.constraints):
        u, v = (src_vars[i] for i in c.scope)
        base[slack_index[ci]] = 1 if f1[u] == 1 and f1[v] == 1 else 0
    k_new = src.k * (S + 1) + m
    inst = LsInstance.checked(
        Formula(tuple(variables), tuple(constraints)), tuple(base), k_new
    )
    meta = {
        "generator": "one-in-three",
        "params": {"n": n, "m": m, "src_k": src.k},
        "derived": {
            "S": S,
            "default_scale": scale is None,
            "variables": len(variables),
            "k": k_new,
        },
        "expected": (
            "answer equals the source instance's answer"
            if scale is None
            else "test-only scale: equivalence not guaranteed"
        ),
    }
    return inst, meta


def neq_elimination(inst):
    """Replace every disequality constraint by two 1-in-3 constraints over a
    fresh variable pair (z0, z1).

    The pair is pinned to (0, 1) in every solution, so solutions project
    exactly onto the original disequality and no budget adjustment is
    needed; the budget is left unchanged.  Instances without disequalities
    are returned as-is.
    """
    neq_tuples = frozenset({(0, 1), (1, 0)})
    targets = [
        i
        for i, c in enumerate(inst.formula.constraints)
        if c.relation.arity == 2 and c.relation.tuples == neq_tuples
    ]
    if not targets:
        return inst
    one_in_three = None
    for r in inst.formula.relations:
        if r.arity == 3 and r.tuples == ONE_IN_THREE.tuples:
            one_in_three = r
            break
    if one_in_three is None:
        one_in_three = ONE_IN_THREE
    variables = list(inst.formula.variables)
    base = list(inst.base)
    constraints = []
    for i, c in enumerate(inst.formula.constraints):
        if i not in targets:
            constraints.append(c)
            continue
        z0 = len(variables)
        variables.append(f"z0_{i}")
        base.append(0)
        z1 = len(variables)
        variables.append(f"z1_{i}")
        base.append(1)
        a, b = c.scope
        constraints.append(Constraint(one_in_three, (a, b, z0)))
        constraints.append(Constraint(one_in_three, (z0, z0, z1)))
    return LsInstance.checked(
        Formula(tuple(variables), tuple(constraints)), tuple(base), inst.k
    )
