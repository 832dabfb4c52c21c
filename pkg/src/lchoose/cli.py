"""Command-line front end.

Every command prints one canonical JSON object on stdout.  Exit codes:
0 positive verdict, 1 negative verdict, 2 inconclusive (budget), 3 bad
input, 4 usage error.  Errors are printed as JSON objects on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from . import __version__
from .acceptance import SUITES, run_acceptance
from .assignments import LambdaAssignment, ListAssignment, SymmetricAssignment
from .choosability import BUDGET_ENV, decide_lambda_choosable
from .constructions import (DEFAULT_SEED, build_non_13_choosable, build_unique_triangulation,
                            rotation_matchings, verify_non_13)
from .graph import EmbeddedGraph, VertexPartition
from .gsg import (cyclic_group, decide_s_colorable, identity_set, solve_gsg, symmetric_group,
                  young_set)
from .io import (InputError, assignment_to_json, digest, dumps,
                 graph_to_json, parse_assignment, parse_graph, parse_permset, parse_signed,
                 permset_to_json, plain_graph, signed_to_json)
from .partitions import IntPartition, leq
from .reductions import (ReductionError, build_separator, color_3chromatic_13,
                         color_eulerian_dual_22, find_eulerian_dual, lambda_to_young_signature,
                         symmetric_to_signed, three_list_normalize, two_list_color, z4_to_112)
from .signed import (MODES, ZK, assemble_wegner, decide_signed_colorable, gadget_report,
                     search_gadget, solve_signed, verify_assembly_not_z4)
from .solver import solve_k, solve_list, verify_list_coloring

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3, 4

POSITIVE = {"colorable", "choosable", "all-colorable", "true", "pass"}
NEGATIVE = {"not-colorable", "not-choosable", "some-signature-fails", "false", "fail"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    budgets: dict[str, int | None] = field(default_factory=dict)
    verdict: str | None = None
    nodes_explored: int | None = None
    wall_time: float = 0.0


def exit_code(status: str) -> int:
    if status in POSITIVE:
        return EXIT_POSITIVE
    if status in NEGATIVE:
        return EXIT_NEGATIVE
    return EXIT_INCONCLUSIVE


def env_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected 'u,v', got {text!r}") from None
    return u, v


def _partition(text: str) -> IntPartition:
    try:
        return IntPartition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coloring(c) -> list[int] | None:
    return None if c is None else list(c)


# ---------------------------------------------------------------- commands

def cmd_solve(args, man: RunManifest) -> dict[str, Any]:
    g = plain_graph(_load_graph(args.graph, man))
    a = _load_assignment(args.lists, g.n, man)
    v = solve_list(g, a.lists, node_budget=args.node_budget)
    man.nodes_explored = v.nodes_explored
    return {"status": v.status, "coloring": _coloring(v.witness), "nodes_explored": v.nodes_explored}


def cmd_decide(args, man: RunManifest) -> dict[str, Any]:
    g = plain_graph(_load_graph(args.graph, man))
    lam = _partition(args.lam)
    budget = args.budget if args.budget is not None else env_budget()
    man.budgets["assignments"] = budget
    res = decide_lambda_choosable(g, lam, budget=budget, node_budget=args.node_budget,
                                  jobs=args.jobs, prune=not args.no_prune, override=args.override)
    man.nodes_explored = res.nodes_explored
    out: dict[str, Any] = {"status": res.status, "lambda": str(lam),
                           "assignments_checked": res.assignments_checked,
                           "core": list(res.core), "reason": res.reason}
    if res.counterexample is not None:
        out["counterexample"] = assignment_to_json(res.counterexample)
        out["failing_component"] = list(res.failing_component)
    return out


def cmd_order(args, man: RunManifest) -> dict[str, Any]:
    a, b = _partition(args.lam), _partition(args.lam_prime)
    ok, cert = leq(a, b)
    out: dict[str, Any] = {"status": "true" if ok else "false", "lambda": str(a), "lambda_prime": str(b)}
    if cert is not None:
        out["grouping"] = [list(g) for g in cert.grouping]
        out["intermediate"] = str(cert.intermediate)
    return out


def cmd_signed_decide(args, man: RunManifest) -> dict[str, Any]:
    g = plain_graph(_load_graph(args.graph, man))
    budget = args.budget if args.budget is not None else env_budget()
    man.budgets["classes"] = budget
    d = decide_signed_colorable(g, args.k, args.mode, budget=budget, node_budget=args.node_budget,
                                jobs=args.jobs)
    out: dict[str, Any] = {"status": d.status, "k": args.k, "mode": args.mode,
                           "classes_checked": d.checked, "classes": d.total, "reason": d.reason}
    if d.failing is not None:
        out["failing"] = signed_to_json(d.failing)
    return out


def cmd_gsg_decide(args, man: RunManifest) -> dict[str, Any]:
    g = plain_graph(_load_graph(args.graph, man))
    if args.set:
        man.inputs[args.set] = digest(args.set)
        s = parse_permset(args.set)
    elif args.young:
        s = young_set(_partition(args.young)).members
    else:
        if args.k is None:
            raise UsageError("--group needs --k")
        s = {"identity": identity_set, "symmetric": symmetric_group, "cyclic": cyclic_group}[args.group](args.k)
    budget = args.budget if args.budget is not None else env_budget()
    man.budgets["signatures"] = budget
    d = decide_s_colorable(g, s, budget=budget, node_budget=args.node_budget, jobs=args.jobs,
                           reduce=False if args.no_reduce else None)
    out: dict[str, Any] = {"status": d.status, "set": permset_to_json(s), "checked": d.checked,
                           "total": d.total, "reduced": d.reduced, "reason": d.reason}
    if d.failing is not None:
        out["failing"] = [",".join(map(str, p.one_line())) for p in d.failing.perms]
    return out


def _verified(g, lists, coloring) -> dict[str, Any]:
    ok = verify_list_coloring(g, lists, coloring)
    return {"status": "colorable" if ok else "fail", "coloring": list(coloring), "verified": ok}


def cmd_reduce(args, man: RunManifest) -> dict[str, Any]:
    kind = args.kind
    if kind == "separator":
        if not (args.lam and args.lam_prime):
            raise UsageError("separator needs --lambda and --lambda-prime")
        inst = build_separator(_partition(args.lam), _partition(args.lam_prime), force=args.force)
        v = solve_list(inst.graph, inst.assignment.lists, node_budget=args.node_budget)
        return {"status": v.status, "graph": graph_to_json(inst.graph),
                "assignment": assignment_to_json(inst.assignment), "family_size": inst.family_size,
                "coloring": _coloring(v.witness)}
    if not (args.graph and args.lists):
        raise UsageError(f"{kind} needs --graph and --lists")
    loaded = _load_graph(args.graph, man)
    g = plain_graph(loaded)
    if kind == "sym4":
        raw = _load_assignment(args.lists, g.n, man)
        sg, back = symmetric_to_signed(g, SymmetricAssignment(raw.lists))
        v = solve_signed(sg, 4, "nk", node_budget=args.node_budget)
        out = {"status": v.status, "signed": signed_to_json(sg)}
        if v.colorable:
            out.update(_verified(g, raw.lists, back(v.witness)))
        return out
    if kind == "z4-112":
        a = _need_lambda(_load_assignment(args.lists, g.n, man))
        sg, back = z4_to_112(g, a)
        v = solve_signed(sg, 4, ZK, node_budget=args.node_budget)
        out = {"status": v.status, "signed": signed_to_json(sg)}
        if v.colorable:
            out.update(_verified(g, a.lists, back(v.witness)))
        return out
    if kind == "young":
        a = _need_lambda(_load_assignment(args.lists, g.n, man))
        sig, back = lambda_to_young_signature(g, a)
        v = solve_gsg(g, sig, a.partition.total, node_budget=args.node_budget)
        out = {"status": v.status, "signature": [",".join(map(str, p.one_line())) for p in sig.perms]}
        if v.colorable:
            out.update(_verified(g, a.lists, back(v.witness)))
        return out
    if kind == "mod4":
        a = _load_assignment(args.lists, g.n, man)
        base = solve_k(g, 4, node_budget=args.node_budget)
        if not base.colorable:
            return {"status": base.status, "reason": "graph is not 4-colourable"}
        return _verified(g, a.lists, two_list_color(g, ListAssignment(a.lists), base.witness))
    if kind == "norm3":
        a = _load_assignment(args.lists, g.n, man)
        nm = three_list_normalize(g, ListAssignment(a.lists))
        out: dict[str, Any] = {"case": nm.case, "lists": assignment_to_json(nm.lists), "steps": len(nm.steps)}
        target = nm.symmetric.lists if nm.symmetric is not None else nm.lists.lists
        v = solve_list(g, target, node_budget=args.node_budget)
        out["status"] = v.status
        if v.colorable:
            out.update(_verified(g, a.lists, nm.translate_back(v.witness)))
        return out
    if kind == "chrom3-13":
        a = _need_lambda(_load_assignment(args.lists, g.n, man))
        if not args.classes:
            raise UsageError("chrom3-13 needs --classes 'a,b/c,d/e'")
        try:
            blocks = [[int(x) for x in blk.split(",") if x.strip()] for blk in args.classes.split("/")]
        except ValueError:
            raise UsageError(f"bad --classes {args.classes!r}") from None
        return _verified(g, a.lists, color_3chromatic_13(g, VertexPartition.of(blocks), a))
    if kind == "euler-22":
        if not isinstance(loaded, EmbeddedGraph):
            raise InputError("euler-22 needs a graph with a rotation", source=args.graph, field="rotation")
        a = _need_lambda(_load_assignment(args.lists, g.n, man))
        if args.h is not None:
            try:
                h = [int(x) for x in args.h.split(",") if x.strip()]
            except ValueError:
                raise UsageError(f"bad --h {args.h!r}") from None
        else:
            h = find_eulerian_dual(loaded)
            if h is None:
                return {"status": "not-colorable", "reason": "no dual subgraph meets the conditions"}
        out = _verified(g, a.lists, color_eulerian_dual_22(loaded, h, a))
        out["h"] = list(h)
        return out
    raise UsageError(f"unknown reduction {kind!r}")  # pragma: no cover - argparse restricts choices


def cmd_construct(args, man: RunManifest) -> dict[str, Any]:
    man.seed = args.seed
    if args.kind == "unique-tri":
        e = build_unique_triangulation(args.seed)
        return {"status": "true", "graph": graph_to_json(e), "faces": len(e.face_list)}
    if args.kind == "non13":
        inst = build_non_13_choosable(args.seed)
        v = verify_non_13(inst)
        man.nodes_explored = v.nodes_explored
        return {"status": "true" if v.status == "not-colorable" else "false",
                "graph": graph_to_json(inst.embedding), "assignment": assignment_to_json(inst.assignment),
                "core": list(inst.core), "solver_status": v.status, "core_branches": v.first_completions}
    scheme = rotation_matchings(args.n)
    return {"status": "true", "n": args.n, "matchings": [[list(e) for e in m] for m in scheme.matchings]}


def cmd_gadget_verify(args, man: RunManifest) -> dict[str, Any]:
    man.inputs[args.signed] = digest(args.signed)
    sg = parse_signed(args.signed)
    u, v = _pair(args.base)
    for x in (u, v):
        if not 0 <= x < sg.graph.n:
            raise InputError(f"base vertex {x} is not in the graph", source=args.signed)
    rep = gadget_report(sg, u, v)
    return {"status": "true" if rep.is_gadget else "false", "z4_colorable": rep.z4_colorable,
            "escape": _coloring(rep.escape)}


def cmd_gadget_search(args, man: RunManifest) -> dict[str, Any]:
    man.seed = args.seed
    gad = search_gadget(args.max_n, seed=args.seed)
    if gad is None:
        return {"status": "false", "gadget": None}
    out: dict[str, Any] = {"status": "true", "gadget": signed_to_json(gad.graph),
                           "base": [gad.u, gad.v], "top": gad.w}
    if args.assemble:
        asm = assemble_wegner(gad)
        chk = verify_assembly_not_z4(asm)
        out["assembly"] = {"graph": signed_to_json(asm.graph), "not_z4_colorable": chk.not_colorable,
                           "k4_contradiction": chk.k4_contradiction}
    return out


def cmd_accept(args, man: RunManifest) -> dict[str, Any]:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = run_acceptance(args.suite)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    return {"status": "pass" if ok else "fail", "suite": args.suite,
            "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                         for r in results]}


# ---------------------------------------------------------------- plumbing

def _load_graph(path: str, man: RunManifest):
    man.inputs[path] = digest(path) if os.path.exists(path) else ""
    return parse_graph(path)


def _load_assignment(path: str, n: int, man: RunManifest):
    man.inputs[path] = digest(path) if os.path.exists(path) else ""
    return parse_assignment(path, n)


def _need_lambda(a):
    if not isinstance(a, LambdaAssignment):
        raise UsageError("this reduction needs an assignment with 'lambda' and 'groups'")
    return a


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lchoose", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--manifest", help="write a run manifest (JSON) to this path")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, jobs=False, budget=False):
        sp.add_argument("--node-budget", type=int, default=None, help="search nodes per solve")
        if budget:
            sp.add_argument("--budget", type=int, default=None,
                            help=f"enumeration budget (default from {BUDGET_ENV})")
        if jobs:
            sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    sp = sub.add_parser("solve", help="list-colour a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--lists", required=True)
    common(sp)
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("decide", help="decide lambda-choosability")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--no-prune", action="store_true", help="search every vertex, not just the core")
    sp.add_argument("--override", action="store_true", help="lift the size guard")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(run=cmd_decide)

    sp = sub.add_parser("order", help="compare two partitions")
    sp.add_argument("lam", metavar="LAMBDA")
    sp.add_argument("lam_prime", metavar="LAMBDA_PRIME")
    sp.set_defaults(run=cmd_order)

    sp = sub.add_parser("signed-decide", help="signed colourability under every signature")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="nk")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(run=cmd_signed_decide)

    sp = sub.add_parser("gsg-decide", help="colourability under every S-signature")
    sp.add_argument("--graph", required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--set", help="permutation set file")
    grp.add_argument("--young", help="partition whose Young set to use")
    grp.add_argument("--group", choices=("identity", "symmetric", "cyclic"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--no-reduce", action="store_true", help="skip the spanning-forest reduction")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(run=cmd_gsg_decide)

    sp = sub.add_parser("reduce", help="run a colour transfer and verify the result")
    sp.add_argument("--kind", required=True, choices=("separator", "sym4", "z4-112", "young", "mod4",
                                                       "norm3", "chrom3-13", "euler-22"))
    sp.add_argument("--graph")
    sp.add_argument("--lists")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--lambda-prime", dest="lam_prime")
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--classes")
    sp.add_argument("--h")
    common(sp)
    sp.set_defaults(run=cmd_reduce)

    sp = sub.add_parser("construct", help="build an explicit graph")
    sp.add_argument("--kind", required=True, choices=("unique-tri", "non13", "kn-matchings"))
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--n", type=int, default=6)
    sp.set_defaults(run=cmd_construct)

    sp = sub.add_parser("gadget-verify", help="check a signed gadget")
    sp.add_argument("--signed", required=True)
    sp.add_argument("--base", required=True, help="u,v")
    sp.set_defaults(run=cmd_gadget_verify)

    sp = sub.add_parser("gadget-search", help="search for a gadget")
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--assemble", action="store_true", help="also build and check the K4 assembly")
    sp.set_defaults(run=cmd_gadget_search)

    sp = sub.add_parser("accept", help="run acceptance criteria")
    sp.add_argument("suite", nargs="?", default="all")
    sp.set_defaults(run=cmd_accept)
    return p


def _error(kind: str, message: str, extra: dict | None = None) -> None:
    obj = {"error": kind, "message": message}
    if extra:
        obj.update(extra)
    sys.stderr.write(dumps(obj))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    man = RunManifest(command=argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        result = args.run(args, man)
    except UsageError as exc:
        _error("usage", str(exc))
        return EXIT_USAGE
    except InputError as exc:
        sys.stderr.write(dumps(exc.to_json()))
        return EXIT_INPUT
    except (ReductionError, ValueError) as exc:
        _error("input", str(exc))
        return EXIT_INPUT
    sys.stdout.write(dumps(result))
    man.verdict = result.get("status")
    man.wall_time = round(time.perf_counter() - start, 6)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(asdict(man), fh, sort_keys=True, indent=2)
            fh.write("\n")
    return exit_code(str(result.get("status")))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
