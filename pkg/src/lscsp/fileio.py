"""Instance / relations / graph file formats.

Instance files are JSON documents::

    {
      "relations":   {"OR": {"arity": 2, "tuples": ["01", "10", "11"]}},
      "variables":   ["x", "y"],
      "constraints": [{"rel": "OR", "scope": ["x", "y"]}],
      "assignment":  {"x": 1, "y": 0},
      "k": 2,
      "metadata":    {...}          # optional, round-tripped verbatim
    }

Tuples are exact-length bit strings; coordinate 1 is the leftmost character.
Graphs use a plain edge-list text format: the first non-comment line is the
vertex count, each following line one ``u v`` edge.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Constraint, Formula, InvalidInstanceError, LsInstance, Relation, validate_instance


class InstanceFormatError(ValueError):
    """Malformed instance/relations/graph file; message carries location."""


def _fail(path, detail):
    raise InstanceFormatError(f"{path}: {detail}")


def _parse_json(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(
            f"{where}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e


def _relation_from_doc(name, doc, where):
    if not isinstance(doc, dict) or "arity" not in doc or "tuples" not in doc:
        _fail(where, f"relations[{name!r}] must have 'arity' and 'tuples'")
    arity = doc["arity"]
    if not isinstance(arity, int) or arity < 1:
        _fail(where, f"relations[{name!r}].arity must be a positive integer")
    tuples = []
    for s in doc["tuples"]:
        if not isinstance(s, str) or len(s) != arity or any(c not in "01" for c in s):
            _fail(
                where,
                f"relations[{name!r}]: tuple {s!r} is not a length-{arity} bit string",
            )
        tuples.append(tuple(int(c) for c in s))
    try:
        return Relation(name, arity, frozenset(tuples))
    except ValueError as e:
        _fail(where, str(e))


def parse_relations(text, where="<relations>"):
    """Parse the ``relations`` table of a document into a name-sorted list."""
    doc = _parse_json(text, where)
    if not isinstance(doc, dict) or not isinstance(doc.get("relations"), dict):
        _fail(where, "expected a JSON object with a 'relations' table")
    rels = [
        _relation_from_doc(name, rdoc, where)
        for name, rdoc in doc["relations"].items()
    ]
    return sorted(rels, key=lambda r: r.name)


def load_relations(path):
    return parse_relations(Path(path).read_text(), str(path))


def parse_instance(text, where="<instance>"):
    """Parse and validate an instance document; returns (instance, metadata)."""
    doc = _parse_json(text, where)
    if not isinstance(doc, dict):
        _fail(where, "top-level value must be a JSON object")
    for key in ("relations", "variables", "constraints", "assignment", "k"):
        if key not in doc:
            _fail(where, f"missing required field {key!r}")
    relations = {
        name: _relation_from_doc(name, rdoc, where)
        for name, rdoc in doc["relations"].items()
    }
    variables = doc["variables"]
    if not isinstance(variables, list) or any(not isinstance(v, str) for v in variables):
        _fail(where, "'variables' must be a list of names")
    if len(set(variables)) != len(variables):
        _fail(where, "variable names must be unique")
    index = {v: i for i, v in enumerate(variables)}
    constraints = []
    for pos, cdoc in enumerate(doc["constraints"]):
        if not isinstance(cdoc, dict) or "rel" not in cdoc or "scope" not in cdoc:
            _fail(where, f"constraints[{pos}] must have 'rel' and 'scope'")
        if cdoc["rel"] not in relations:
            _fail(where, f"constraints[{pos}] references undeclared relation {cdoc['rel']!r}")
        rel = relations[cdoc["rel"]]
        scope = []
        for v in cdoc["scope"]:
            if v not in index:
                _fail(where, f"constraints[{pos}].scope: unknown variable {v!r}")
            scope.append(index[v])
        if len(scope) != rel.arity:
            _fail(
                where,
                f"constraints[{pos}]: scope length {len(scope)} != arity "
                f"{rel.arity} of {rel.name!r}",
            )
        constraints.append(Constraint(rel, tuple(scope)))
    assignment = doc["assignment"]
    if not isinstance(assignment, dict):
        _fail(where, "'assignment' must map variable names to 0/1")
    missing = [v for v in variables if v not in assignment]
    extra = [v for v in assignment if v not in index]
    if missing or extra:
        _fail(where, f"assignment mismatch: missing {missing}, unknown {extra}")
    base = []
    for v in variables:
        b = assignment[v]
        if b not in (0, 1):
            _fail(where, f"assignment[{v!r}] must be 0 or 1, got {b!r}")
        base.append(b)
    if not isinstance(doc["k"], int):
        _fail(where, "'k' must be an integer")
    inst = LsInstance(Formula(tuple(variables), tuple(constraints)), tuple(base), doc["k"])
    violations = validate_instance(inst)
    if violations:
        raise InvalidInstanceError(violations)
    metadata = doc.get("metadata")
    return inst, metadata


def load_instance(path):
    return parse_instance(Path(path).read_text(), str(path))


def _bits(t):
    return "".join(str(b) for b in t)


def instance_document(inst, metadata=None):
    """JSON-serializable document for an instance (deterministic ordering)."""
    relations = {}
    for c in inst.formula.constraints:
        r = c.relation
        if r.name in relations and relations[r.name] is not r:
            prev = relations[r.name]
            if prev.arity != r.arity or prev.tuples != r.tuples:
                raise ValueError(f"two distinct relations share the name {r.name!r}")
        relations[r.name] = r
    doc = {
        "relations": {
            name: {"arity": r.arity, "tuples": sorted(_bits(t) for t in r.tuples)}
            for name, r in sorted(relations.items())
        },
        "variables": list(inst.formula.variables),
        "constraints": [
            {
                "rel": c.relation.name,
                "scope": [inst.formula.variables[i] for i in c.scope],
            }
            for c in inst.formula.constraints
        ],
        "assignment": {v: b for v, b in zip(inst.formula.variables, inst.base)},
        "k": inst.k,
    }
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def dumps_instance(inst, metadata=None):
    return json.dumps(instance_document(inst, metadata), indent=2) + "\n"


def save_instance(path, inst, metadata=None):
    Path(path).write_text(dumps_instance(inst, metadata))


def parse_graph(text, where="<graph>"):
    """Parse the ``n`` + ``u v`` edge-list format into (n, edge list)."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        _fail(where, "empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        _fail(where, f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for pos, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            _fail(where, f"line {pos}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            _fail(where, f"line {pos}: expected integer endpoints, got {ln!r}")
        edges.append((u, v))
    return n, edges


def load_graph(path):
    return parse_graph(Path(path).read_text(), str(path))


def dumps_graph(n, edges):
    return "\n".join([str(n)] + [f"{u} {v}" for u, v in sorted(edges)]) + "\n"
