"""Exhaustive decision of lambda-choosability."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from .assignments import (DEFAULT_CELL_LIMIT, BudgetExceeded, LambdaAssignment, ListAssignment,
                          count_lambda_assignments, enumerate_lambda_assignments)
from .graph import Graph
from .partitions import as_partition
from .solver import BUDGET_EXHAUSTED, NOT_COLORABLE, solve_list

CHOOSABLE = "choosable"
NOT_CHOOSABLE = "not-choosable"
INCONCLUSIVE = "inconclusive"

DEFAULT_ASSIGNMENT_BUDGET = 2_000_000
BUDGET_ENV = "LCHOOSE_BUDGET"
_CHUNK = 2000


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_ASSIGNMENT_BUDGET


@dataclass(frozen=True)
class ChoosabilityResult:
    status: str
    counterexample: LambdaAssignment | None = None
    assignments_checked: int = 0
    nodes_explored: int = 0
    core: tuple[int, ...] = ()
    reason: str | None = None
    failing_component: tuple[int, ...] = field(default=())

    @property
    def choosable(self) -> bool | None:
        if self.status == INCONCLUSIVE:
            return None
        return self.status == CHOOSABLE

    def __bool__(self) -> bool:
        return self.status == CHOOSABLE


def _check_chunk(args):
    g, chunk, node_budget = args
    nodes = 0
    for i, lists in enumerate(chunk):
        v = solve_list(g, lists, node_budget=node_budget)
        nodes += v.nodes_explored
        if v.status == NOT_COLORABLE:
            return i, "fail", nodes
        if v.status == BUDGET_EXHAUSTED:
            return i, "budget", nodes
    return len(chunk), "ok", nodes


def _chunks(stream, size):
    while True:
        block = list(islice(stream, size))
        if not block:
            return
        yield block


def decide_lambda_choosable(g: Graph, lam, *, special: bool = True,
                            cell_limit: int = DEFAULT_CELL_LIMIT, override: bool = False,
                            budget: int | None = None, node_budget: int | None = None,
                            jobs: int = 1, prune: bool = True) -> ChoosabilityResult:
    """Decide whether ``g`` is colourable from every lambda-assignment.

    Vertices of degree below the total list size can always be coloured last,
    so only the k-core is searched, one connected component at a time.
    Unit parts are collapsed to shared colours first (colourability from all
    special assignments is equivalent to colourability from all assignments).
    The counterexample returned is the first failing assignment in the
    enumeration order, lifted to all of ``g`` by giving every other vertex a
    copy of one list of the failing component.  Exceeding ``budget``
    assignments or ``node_budget`` nodes in one solve yields an inconclusive
    result rather than a verdict.
    """
    lam = as_partition(lam)
    k = lam.total
    budget = default_budget() if budget is None else budget
    core = g.k_core(k) if prune else list(range(g.n))
    if not core:
        return ChoosabilityResult(CHOOSABLE, core=(), reason="empty core")
    sub, keep = g.induced(core)
    comps = sub.components()
    plan = []
    for comp in comps:
        comp_graph, comp_keep = sub.induced(comp)
        total = count_lambda_assignments(comp_graph.n, lam, special=special)
        if not override and comp_graph.n * k > cell_limit:
            return ChoosabilityResult(INCONCLUSIVE, core=tuple(core),
                                      reason=f"component of {comp_graph.n} vertices exceeds the cell limit")
        plan.append((comp_graph, [keep[x] for x in comp_keep], total))
    grand = sum(t for *_, t in plan)
    if grand > budget:
        return ChoosabilityResult(INCONCLUSIVE, core=tuple(core),
                                  reason=f"{grand} assignments exceed the budget {budget}")
    checked = nodes = 0
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for comp_graph, original, _ in plan:
            stream = enumerate_lambda_assignments(comp_graph, lam, special=special, override=True)
            blocks = _chunks(stream, _CHUNK)
            if pool is None:
                results = (( _check_chunk((comp_graph, [a.lists for a in b], node_budget)), b)
                           for b in blocks)
            else:
                materialised = list(blocks)
                args = [(comp_graph, [a.lists for a in b], node_budget) for b in materialised]
                results = zip(pool.map(_check_chunk, args), materialised)
            for (idx, tag, used), block in results:
                nodes += used
                if tag == "ok":
                    checked += len(block)
                    continue
                checked += idx + 1
                if tag == "budget":
                    return ChoosabilityResult(INCONCLUSIVE, None, checked, nodes, tuple(core),
                                              "node budget spent on one assignment")
                bad = block[idx]
                return ChoosabilityResult(NOT_CHOOSABLE, lift(g, original, bad), checked, nodes,
                                          tuple(core), failing_component=tuple(original))
    finally:
        if pool is not None:
            pool.shutdown()
    return ChoosabilityResult(CHOOSABLE, None, checked, nodes, tuple(core))


def lift(g: Graph, vertices: list[int], a: LambdaAssignment) -> LambdaAssignment:
    """Extend an assignment of ``g[vertices]`` to ``g`` by copying the first list."""
    pos = {v: i for i, v in enumerate(vertices)}
    filler = a.lists[0]
    lists = tuple(a.lists[pos[v]] if v in pos else filler for v in range(g.n))
    return LambdaAssignment(ListAssignment(lists), a.partition, a.groups)


def is_lambda_choosable(g: Graph, lam, **kw) -> bool:
    res = decide_lambda_choosable(g, lam, **kw)
    if res.status == INCONCLUSIVE:
        raise BudgetExceeded(res.reason)
    return res.status == CHOOSABLE
