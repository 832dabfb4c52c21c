"""The twelve acceptance criteria, grouped into named suites."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .assignments import (LambdaAssignment, ListAssignment, SymmetricAssignment, list_complexity,
                          validate_lambda)
from .choosability import decide_lambda_choosable
from .constructions import (build_non_13_choosable, build_unique_triangulation,
                            edge_lambda_color_kn, rotation_matchings, verify_non_13)
from .graph import (Graph, graphs_up_to_iso, graphs_with_edges, is_isomorphic, make_complete,
                    make_complete_bipartite, make_cycle)
from .gsg import (ALL_COLORABLE as GSG_ALL, cyclic_group, decide_s_colorable, identity_set,
                  symmetric_group, young_set)
from .oracles import brute_signed_colorable, naive_gsg_all, naive_k_choosable, naive_signed_all
from .partitions import (IntPartition, brute_leq_oracle, enumerate_partitions, is_refinement, leq,
                         ones)
from .reductions import build_separator, symmetric_to_signed, z4_to_112
from .signed import (ALL_COLORABLE, NK, SOME_FAIL, ZK, assemble_wegner, decide_signed_colorable,
                     search_gadget, solve_signed, verify_assembly_not_z4, verify_gadget)
from .solver import (count_colorings, is_proper_edge_coloring, solve_k, solve_list,
                     solve_list_edges, verify_list_coloring)

SEED = 20240501


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.number:2d} {self.name} ({self.seconds:.2f}s / {self.limit:.0f}s)"


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def _random_lambda(rng: random.Random, n: int, lam: IntPartition, spare: int = 2) -> LambdaAssignment:
    groups, off = [], 1
    for k in lam.parts:
        groups.append(list(range(off, off + k + spare)))
        off += k + spare
    lists = [frozenset(c for grp, k in zip(groups, lam.parts) for c in rng.sample(grp, k)) for _ in range(n)]
    return LambdaAssignment(ListAssignment(tuple(lists)), lam, tuple(frozenset(g) for g in groups))


# ---------------------------------------------------------------- criteria

def c01_partition_order():
    parts = [p for k in range(1, 9) for p in enumerate_partitions(k)]
    mismatches = 0
    for a in parts:
        for b in parts:
            ok, cert = leq(a, b)
            if ok != brute_leq_oracle(a, b) or (ok and not cert.check()):
                mismatches += 1
    refine, _ = is_refinement(IntPartition.of([2, 3, 4]), IntPartition.of([4, 5]))
    ordered, _ = leq(IntPartition.of([2, 2]), IntPartition.of([1, 1, 1, 3]))
    return mismatches == 0 and refine and ordered, {
        "pairs": len(parts) ** 2, "mismatches": mismatches,
        "refines_234_45": refine, "leq_22_1113": ordered}


def c02_hierarchy_endpoints():
    bad, cases = [], 0
    for n in range(1, 6):
        for g in graphs_up_to_iso(n):
            for k in range(1, 4):
                cases += 1
                low = decide_lambda_choosable(g, ones(k)).choosable
                if low != solve_k(g, k).colorable:
                    bad.append((n, g.edges, k, "ones"))
                top = decide_lambda_choosable(g, IntPartition((k,))).choosable
                if top != naive_k_choosable(g, k):
                    bad.append((n, g.edges, k, "single part"))
    return not bad, {"cases": cases, "disagreements": bad}


def c03_separator():
    inst = build_separator(IntPartition.of([1, 1]), IntPartition.of([2]))
    k33 = is_isomorphic(inst.graph, make_complete_bipartite(3, 3))
    pattern = {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}
    by_part = [{inst.assignment.lists[v] for v in range(inst.graph.n) if inst.part_of[v] == i} for i in range(2)]
    lists_ok = all(s == pattern for s in by_part)
    not_col = solve_list(inst.graph, inst.assignment.lists).status == "not-colorable"
    choosable = decide_lambda_choosable(inst.graph, IntPartition.of([1, 1])).choosable is True
    return k33 and lists_ok and not_col and choosable, {
        "k33": k33, "list_pattern": lists_ok, "not_colorable": not_col, "11_choosable": choosable}


def c04_non13():
    inst = build_non_13_choosable()
    g = inst.embedding.graph
    simple = len(set(g.edges)) == g.m and all(u != v for u, v in g.edges)
    planar = inst.embedding.is_planar_embedding()
    a = inst.assignment
    valid = bool(validate_lambda(a))
    unit = [grp for grp, k in zip(a.groups, a.partition.parts) if k == 1]
    c1 = unit == [frozenset({4})]
    complexity = list_complexity(a)
    verdict = verify_non_13(inst)
    ok = (simple and planar and valid and c1 and complexity == 4
          and verdict.status == "not-colorable" and verdict.first_completions == 24)
    return ok, {"vertices": g.n, "edges": g.m, "simple": simple, "planar": planar, "valid": valid,
                "unit_group_4": c1, "list_complexity": complexity, "status": verdict.status,
                "core_branches": verdict.first_completions}


def c05_triangulation():
    e = build_unique_triangulation()
    count = count_colorings(e.graph, 4)
    ok = e.graph.n == 14 and len(e.face_list) == 24 and count == 24
    return ok, {"vertices": e.graph.n, "faces": len(e.face_list), "colorings": count}


def c06_kn_matchings():
    rng = random.Random(SEED)
    scheme = rotation_matchings(6)
    scheme.check()
    kn = make_complete(6)
    covered = sorted(e for m in scheme.matchings for e in m) == list(kn.edges)
    h2 = scheme.union([1, 2])
    hamilton = h2.is_connected() and all(h2.degree(v) == 2 for v in range(6))
    h3 = scheme.union([1, 2, 3])
    cubic = all(h3.degree(v) == 3 for v in range(6))
    class1 = solve_list_edges(h3, [range(1, 4)] * h3.m).colorable
    failures = 0
    for lam in (IntPartition.of([2, 3]), IntPartition.of([1, 2, 2])):
        for _ in range(100):
            a = _random_lambda(rng, kn.m, lam)
            try:
                out = edge_lambda_color_kn(6, lam, a)
                if not is_proper_edge_coloring(kn, out):
                    failures += 1
            except AssertionError:
                failures += 1
    ok = covered and hamilton and cubic and class1 and failures == 0
    return ok, {"partition": covered, "hamilton": hamilton, "cubic": cubic, "class_one": class1,
                "failures": failures}


def c07_transfer_soundness():
    rng = random.Random(SEED + 7)
    violations = found = 0
    for _ in range(200):
        n = rng.randint(2, 8)
        g = _random_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
        lists = []
        for _ in range(n):
            p, q = rng.sample(range(1, 6), 2)
            lists.append(frozenset({p, -p, q, -q}))
        sg, back = symmetric_to_signed(g, SymmetricAssignment(tuple(lists)))
        v = solve_signed(sg, 4, NK)
        if v.colorable:
            found += 1
            if not verify_list_coloring(g, lists, back(v.witness)):
                violations += 1
        a = _random_lambda(rng, n, IntPartition.of([1, 1, 2]))
        sg, back = z4_to_112(g, a)
        v = solve_signed(sg, 4, ZK)
        if v.colorable:
            found += 1
            if not verify_list_coloring(g, a.lists, back(v.witness)):
                violations += 1
    return violations == 0, {"graphs": 200, "transfers_checked": found, "violations": violations}


def c08_k2222():
    g = Graph.from_edges(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if u // 2 != v // 2])
    detail, ok = {}, True
    for mode in (NK, ZK):
        d = decide_signed_colorable(g, 4, mode)
        entry = {"status": d.status, "classes_checked": d.checked, "classes": d.total}
        if d.status == SOME_FAIL:
            entry["negative_edges"] = d.failing.negative_edges()
            entry["brute_force_colorable"] = brute_signed_colorable(d.failing, 4, mode)
            ok = ok and not entry["brute_force_colorable"]
        else:
            ok = False
        detail[mode] = entry
    return ok, detail


def c09_assembly():
    gadget = search_gadget(10)
    if gadget is None:
        return False, {"gadget": None}
    verified = verify_gadget(gadget.graph, gadget.u, gadget.v)
    asm = assemble_wegner(gadget)
    check = verify_assembly_not_z4(asm)
    ok = verified and check.not_colorable and check.k4_contradiction
    return ok, {"gadget_vertices": gadget.n, "gadget_verified": verified,
                "assembly_vertices": asm.graph.graph.n, "not_z4_colorable": check.not_colorable,
                "k4_contradiction": check.k4_contradiction}


def c10_young_consistency():
    violations, antecedents, cases = [], 0, 0
    lams = [p for k in range(1, 4) for p in enumerate_partitions(k)]
    for n in range(1, 5):
        for g in graphs_up_to_iso(n):
            for lam in lams:
                cases += 1
                d = decide_s_colorable(g, young_set(lam).members)
                if d.status == GSG_ALL:
                    antecedents += 1
                    if decide_lambda_choosable(g, lam).choosable is not True:
                        violations.append((n, g.edges, str(lam)))
    return not violations, {"cases": cases, "s_colorable": antecedents, "violations": violations}


def c11_switching_oracles():
    graphs = graphs_with_edges(6)
    bad = []
    for g in graphs:
        for k in (1, 2, 3):
            for mode in (NK, ZK):
                if naive_signed_all(g, k, mode) != (decide_signed_colorable(g, k, mode).status == ALL_COLORABLE):
                    bad.append(("signed", g.edges, k, mode))
            sets = {"identity": identity_set(k), "symmetric": symmetric_group(k),
                    "cyclic": cyclic_group(k)}
            for lam in enumerate_partitions(k):
                sets[f"young {lam}"] = young_set(lam).members
            for name, s in sets.items():
                if naive_gsg_all(g, s, k) != (decide_s_colorable(g, s).status == GSG_ALL):
                    bad.append(("gsg", g.edges, k, name))
    return not bad, {"graphs": len(graphs), "disagreements": bad}


def c12_classical():
    two = IntPartition((2,))
    c4 = decide_lambda_choosable(make_cycle(4), two).choosable
    c5 = decide_lambda_choosable(make_cycle(5), two).choosable
    k33 = decide_lambda_choosable(make_complete_bipartite(3, 3), two).choosable
    k4 = {}
    for lam in enumerate_partitions(4):
        k4[str(lam)] = (decide_lambda_choosable(make_complete(4), lam).choosable is True
                        and decide_lambda_choosable(make_complete(4), lam, prune=False).choosable is True)
    ok = c4 is True and c5 is False and k33 is False and all(k4.values())
    return ok, {"C4": c4, "C5": c5, "K33": k33, "K4": k4}


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, dict]], float]] = {
    1: ("partition order agrees with brute force", c01_partition_order, 5),
    2: ("hierarchy endpoints on small graphs", c02_hierarchy_endpoints, 120),
    3: ("separating instance for {1,1} vs {2}", c03_separator, 1),
    4: ("planar graph that is not {1,3}-choosable", c04_non13, 30),
    5: ("uniquely 4-colourable triangulation", c05_triangulation, 10),
    6: ("K6 rotation matchings and edge colouring", c06_kn_matchings, 60),
    7: ("signed and Z4 transfer soundness", c07_transfer_soundness, 120),
    8: ("K2222 fails in both signed modes", c08_k2222, 600),
    9: ("gadget assembly is not Z4-colourable", c09_assembly, 300),
    10: ("Young signature colourability implies choosability", c10_young_consistency, 300),
    11: ("switching reductions agree with full enumeration", c11_switching_oracles, 120),
    12: ("classical sanity anchors", c12_classical, 60),
}

SUITES: dict[str, tuple[int, ...]] = {
    "all": tuple(CRITERIA),
    "partitions": (1,),
    "choosability": (2, 12),
    "reductions": (3, 7, 10),
    "constructions": (4, 5, 6),
    "signed": (8, 9),
    "oracles": (2, 11),
}


def run_criterion(number: int) -> CriterionResult:
    name, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        ok, detail = False, {"exception": f"{type(exc).__name__}: {exc}"}
    seconds = time.perf_counter() - start
    if seconds > limit:
        detail = {**detail, "over_time_limit": True}
        ok = False
    return CriterionResult(number, name, bool(ok), seconds, limit, detail)


def run_acceptance(suite: str = "all") -> list[CriterionResult]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [run_criterion(i) for i in SUITES[suite]]
