"""Command-line surface: classify relations files, solve instances, generate
gadget instances, and benchmark search-tree growth.

Exit codes are a stable contract: for ``solve``, 0 = YES, 1 = NO, 2 = any
error (including budget exhaustion); other commands use 0 = success, 2 =
error.  Coordinate indices in reports are 1-based, matching the file
format's "coordinate 1 is the leftmost character" convention.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from . import bench as bench_mod
from . import fileio, gadgets
from .catalog import BUILTINS
from .classify import classify_language
from .core import BudgetExceededError, InvalidInstanceError, brute_force_ls, dist, weight
from .solve import SolveConfig, WrongAlgorithmError, solve


@dataclass(frozen=True)
class RunReport:
    """Machine-readable record of one CLI invocation; round-trips via JSON."""

    command: str
    verdict: dict | None = None
    answer: str | None = None
    witness: dict | None = None
    algorithm: str | None = None
    nodes: int | None = None
    branch_points: int | None = None
    wall_time_s: float | None = None
    oracle_agreement: bool | None = None
    error: str | None = None

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, doc):
        return cls(**doc)


class InstanceUsageError(ValueError):
    """Bad command usage or parameters (exit code 2)."""


def _bits(t):
    return "".join(str(b) for b in t)


def _relation_report(cls):
    doc = {
        "zero_valid": cls.zero_valid,
        "one_valid": cls.one_valid,
        "horn": cls.horn,
        "affine": cls.affine,
        "width2_affine": cls.width2_affine,
        "ihsb_minus": cls.ihsb_minus,
        "flip_separable": cls.flip_separable,
    }
    if cls.horn_witness is not None:
        a, b = cls.horn_witness
        doc["horn_witness"] = {"pair": [_bits(a), _bits(b)]}
    if cls.flipsep_witness is not None:
        t, s1, s2 = cls.flipsep_witness
        doc["flipsep_witness"] = {
            "tuple": _bits(t),
            "s1": sorted(i + 1 for i in s1),
            "s2": sorted(i + 1 for i in s2),
        }
    return doc


def _verdict_report(verdict):
    return {
        "relations": {
            name: _relation_report(cls) for name, cls in sorted(verdict.per_relation.items())
        },
        "ls_class": verdict.ls_class,
        "np_hard": verdict.np_hard,
        "minones_class": verdict.minones_class,
        "algorithm": verdict.algorithm,
    }


def _print_verdict(report, out):
    for name, flags in report["relations"].items():
        bools = " ".join(
            f"{key}={str(flags[key]).lower()}"
            for key in (
                "zero_valid", "one_valid", "horn", "affine",
                "width2_affine", "ihsb_minus", "flip_separable",
            )
        )
        print(f"relation {name}: {bools}", file=out)
        if "horn_witness" in flags:
            a, b = flags["horn_witness"]["pair"]
            print(f"  min-closure violation: min({a}, {b}) missing", file=out)
        if "flipsep_witness" in flags:
            w = flags["flipsep_witness"]
            print(
                f"  flip-separability violation: tuple {w['tuple']} "
                f"s1={w['s1']} s2={w['s2']}",
                file=out,
            )
    print(
        f"ls_class={report['ls_class']} np_hard={str(report['np_hard']).lower()} "
        f"minones_class={report['minones_class']} algorithm={report['algorithm']}",
        file=out,
    )


def cmd_classify(args, out=None):
    out = out or sys.stdout
    start = time.perf_counter()
    relations = fileio.load_relations(args.path)
    if not relations:
        raise InstanceUsageError("relations file declares no relations")
    verdict = classify_language(relations)
    report = RunReport(
        command="classify",
        verdict=_verdict_report(verdict),
        wall_time_s=time.perf_counter() - start,
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2), file=out)
    else:
        _print_verdict(report.verdict, out)
    return 0


def cmd_solve(args, out=None):
    out = out or sys.stdout
    start = time.perf_counter()
    inst, _meta = fileio.load_instance(args.path)
    cfg = SolveConfig(
        node_budget=args.budget,
        deterministic=args.deterministic,
        force_algorithm=args.algo,
    )
    decision = solve(inst, cfg)
    agreement = None
    if args.check_oracle:
        oracle = brute_force_ls(inst, subset_budget=args.budget)
        agreement = oracle.answer == decision.answer
    witness = None
    if decision.witness is not None:
        witness = {
            v: b for v, b in zip(inst.formula.variables, decision.witness)
        }
    relations = inst.formula.relations
    verdict = _verdict_report(classify_language(relations)) if relations else None
    report = RunReport(
        command="solve",
        verdict=verdict,
        answer="YES" if decision.answer else "NO",
        witness=witness,
        algorithm=decision.stats.algorithm,
        nodes=decision.stats.nodes,
        branch_points=decision.stats.branch_points,
        wall_time_s=time.perf_counter() - start,
        oracle_agreement=agreement,
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2), file=out)
    else:
        print(f"answer: {report.answer}", file=out)
        print(f"algorithm: {report.algorithm}", file=out)
        print(f"nodes: {report.nodes}", file=out)
        if witness is not None:
            flips = {v: b for v, b in witness.items()
                     if b != dict(zip(inst.formula.variables, inst.base))[v]}
            print(
                "witness: weight {} (base {}), distance {}".format(
                    weight(decision.witness), weight(inst.base),
                    dist(decision.witness, inst.base),
                ),
                file=out,
            )
            print(
                "  " + " ".join(f"{v}={b}" for v, b in witness.items()),
                file=out,
            )
            print(
                "  flipped: " + " ".join(sorted(flips)), file=out,
            )
        if agreement is not None:
            print(f"oracle_agreement: {str(agreement).lower()}", file=out)
    return 0 if decision.answer else 1


def _load_named_relation(name, relations_path):
    if relations_path:
        for rel in fileio.load_relations(relations_path):
            if rel.name == name:
                return rel
        raise InstanceUsageError(f"relation {name!r} not found in {relations_path}")
    if name in BUILTINS:
        return BUILTINS[name]
    raise InstanceUsageError(
        f"unknown relation {name!r}; pass --relations FILE or use a built-in "
        f"({', '.join(sorted(BUILTINS))})"
    )


def cmd_gen(args, out=None):
    out = out or sys.stdout
    if args.kind == "clique-vc":
        n, edges = fileio.load_graph(args.graph)
        inst, meta = gadgets.gen_vc_ls_from_clique(
            gadgets.Graph.from_edges(n, edges), args.x, args.t
        )
    elif args.kind == "domset":
        n, edges = fileio.load_graph(args.graph)
        if args.relation:
            rel = _load_named_relation(args.relation, args.relations)
            rp = gadgets.derive_r_prime(rel)
        else:
            rp = gadgets.RPrime(
                BUILTINS["AND_GRAPH"], ("x", "y", "z"), BUILTINS["AND_GRAPH"]
            )
        inst, meta = gadgets.gen_domset_reduction(
            gadgets.Graph.from_edges(n, edges), args.t, rp
        )
    elif args.kind == "w1":
        src, _ = fileio.load_instance(args.src)
        r1 = _load_named_relation(args.r1, args.relations)
        r2 = _load_named_relation(args.r2, args.relations)
        inst, meta = gadgets.gen_w1_reduction(r1, r2, src)
    elif args.kind == "one-in-three":
        src, _ = fileio.load_instance(args.src)
        inst, meta = gadgets.gen_one_in_three_from_vc(src, scale=args.scale)
    else:  # pragma: no cover - argparse restricts choices
        raise InstanceUsageError(f"unknown generator kind {args.kind!r}")
    text = fileio.dumps_instance(inst, metadata=meta)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}: {len(inst.formula.variables)} variables, "
              f"{len(inst.formula.constraints)} constraints, k={inst.k}", file=out)
    else:
        out.write(text)
    return 0


def cmd_bench(args, out=None):
    out = out or sys.stdout
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    sizes = tuple(int(s) for s in args.sizes.split(","))
    rows = bench_mod.run_bench(suites=suites, sizes=sizes, kmax=args.kmax)
    print(bench_mod.format_table(rows), file=out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(bench_mod.to_csv(rows))
        print(f"wrote {args.csv}", file=out)
    violations = [r for r in rows if not r.within_bound]
    if violations:
        print(f"bound violated on {len(violations)} rows", file=sys.stderr)
        return 2
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lscsp",
        description="Local search for Boolean CSP: classify constraint "
        "languages, solve is-there-a-lighter-solution-within-distance-k "
        "queries, and generate hardness-gadget instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the relations in a file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="decide an instance file")
    p.add_argument("path")
    p.add_argument("--algo", choices=("ihsb", "width2", "horn_bst", "flip_sep_bst", "brute_force"))
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--check-oracle", action="store_true",
                   help="also run the exhaustive oracle and report agreement")
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a gadget instance")
    gsub = p.add_subparsers(dest="kind", required=True)

    g = gsub.add_parser("clique-vc", help="vertex-cover gadget from a clique query")
    g.add_argument("--graph", required=True)
    g.add_argument("--x", type=int, required=True, help="distinguished vertex")
    g.add_argument("--t", type=int, required=True, help="clique size (odd)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    g = gsub.add_parser("w1", help="two-relation reduction from an OR instance")
    g.add_argument("--src", required=True, help="source OR instance file")
    g.add_argument("--r1", required=True, help="non-min-closed relation name")
    g.add_argument("--r2", required=True, help="non-flip-separable relation name")
    g.add_argument("--relations", help="relations file defining --r1/--r2")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    g = gsub.add_parser("domset", help="dominating-set gadget")
    g.add_argument("--graph", required=True)
    g.add_argument("--t", type=int, required=True, help="dominating-set size")
    g.add_argument("--relation", help="min-closed, non-implicative relation to derive the core from")
    g.add_argument("--relations", help="relations file defining --relation")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    g = gsub.add_parser("one-in-three", help="1-in-3 gadget from an OR instance")
    g.add_argument("--src", required=True, help="source OR instance file")
    g.add_argument("--scale", type=int, help="override the bundle size S (test use)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="node-count growth benchmark")
    p.add_argument("--suites", default="horn,flipsep")
    p.add_argument("--sizes", default="8,10")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--csv", help="also write the table as CSV")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as e:
        print(f"error: budget exceeded: {e}", file=sys.stderr)
        return 2
    except WrongAlgorithmError as e:
        print(f"error: wrong algorithm: {e}", file=sys.stderr)
        return 2
    except (
        fileio.InstanceFormatError,
        InvalidInstanceError,
        InstanceUsageError,
        ValueError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
