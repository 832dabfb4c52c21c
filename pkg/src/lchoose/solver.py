"""Exact backtracking over binary constraint problems with bitset domains.

Every colouring notion in the package (lists, signed, cyclic, permutation
signatures) compiles to the same shape: each vertex has a finite value list
and each edge forbids some value pairs.  The search uses smallest domain
first (ties by index), forward checking, and propagation of forced
singletons.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .assignments import ListAssignment
from .graph import Graph, line_graph

COLORABLE = "colorable"
NOT_COLORABLE = "not-colorable"
BUDGET_EXHAUSTED = "budget-exhausted"


class _OutOfNodes(Exception):
    pass


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)

    def __iter__(self) -> Iterator[int]:
        return iter(self.assignment)

    def as_list(self) -> list[int]:
        return list(self.assignment)


@dataclass(frozen=True)
class SearchVerdict:
    status: str
    witness: Coloring | None = None
    nodes_explored: int = 0
    first_completions: int = 0
    certificate: str | None = None

    @property
    def colorable(self) -> bool:
        return self.status == COLORABLE

    @property
    def decided(self) -> bool:
        return self.status != BUDGET_EXHAUSTED


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BinaryCSP:
    """Vertices with value lists and per-arc forbidden-pair tables.

    ``tables[(u, v)][a]`` is the bitmask of value indices of ``v`` that clash
    with value index ``a`` at ``u``.  Both directions are always stored.
    """

    def __init__(self, values: Sequence[Sequence[int]]):
        self.values: list[tuple[int, ...]] = [tuple(vs) for vs in values]
        self.n = len(self.values)
        self.nbrs: list[list[int]] = [[] for _ in range(self.n)]
        self.tables: dict[tuple[int, int], list[int]] = {}
        self._index = [{x: i for i, x in enumerate(vs)} for vs in self.values]

    def add_constraint(self, u: int, v: int, forbid: Callable[[int, int], bool]) -> None:
        """Forbid the value pairs ``(x, y)`` at ``(u, v)`` for which ``forbid(x, y)`` holds."""
        if u == v:
            raise ValueError("constraints join distinct vertices")
        fw = [0] * len(self.values[u])
        bw = [0] * len(self.values[v])
        for a, x in enumerate(self.values[u]):
            for b, y in enumerate(self.values[v]):
                if forbid(x, y):
                    fw[a] |= 1 << b
                    bw[b] |= 1 << a
        self._merge(u, v, fw)
        self._merge(v, u, bw)

    def add_inequality(self, u: int, v: int, image: Callable[[int], int] | None = None) -> None:
        """Forbid ``y == image(x)`` (plain inequality when ``image`` is None)."""
        fw = [0] * len(self.values[u])
        bw = [0] * len(self.values[v])
        idx_v = self._index[v]
        for a, x in enumerate(self.values[u]):
            b = idx_v.get(x if image is None else image(x))
            if b is not None:
                fw[a] |= 1 << b
                bw[b] |= 1 << a
        self._merge(u, v, fw)
        self._merge(v, u, bw)

    def _merge(self, u: int, v: int, table: list[int]) -> None:
        old = self.tables.get((u, v))
        if old is None:
            self.tables[(u, v)] = table
            self.nbrs[u].append(v)
        else:
            self.tables[(u, v)] = [x | y for x, y in zip(old, table)]

    def consistent(self, values: Sequence[int]) -> bool:
        """Check a full assignment (by value, not index) against every table."""
        for v in range(self.n):
            if values[v] not in self._index[v]:
                return False
        for (u, v), tab in self.tables.items():
            a = self._index[u][values[u]]
            b = self._index[v][values[v]]
            if tab[a] >> b & 1:
                return False
        return True


class _Search:
    def __init__(self, csp: BinaryCSP, first: Iterable[int] | None, node_budget: int | None):
        self.csp = csp
        self.first = sorted(set(first)) if first else []
        self.first_set = set(self.first)
        self.budget = node_budget
        self.nodes = 0
        self.first_completions = 0

    # -- propagation
    def assign(self, dom: list[int], asg: list[int], v: int, a: int) -> bool:
        tables, nbrs = self.csp.tables, self.csp.nbrs
        queue = [(v, a)]
        while queue:
            v, a = queue.pop()
            if asg[v] >= 0:
                if asg[v] != a:
                    return False
                continue
            if not dom[v] >> a & 1:
                return False
            asg[v] = a
            dom[v] = 1 << a
            for w in nbrs[v]:
                if asg[w] >= 0:
                    continue
                t = tables[(v, w)][a]
                if dom[w] & t:
                    d = dom[w] & ~t
                    if not d:
                        return False
                    dom[w] = d
                    if not d & (d - 1):
                        queue.append((w, d.bit_length() - 1))
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfNodes

    def _pick(self, dom: list[int], asg: list[int], scope: Sequence[int], sset: set[int]) -> int:
        best, best_size = -1, 1 << 30
        if self.first:
            for v in self.first:
                if asg[v] < 0 and v in sset:
                    s = dom[v].bit_count()
                    if s < best_size:
                        best, best_size = v, s
            if best >= 0:
                return best
        for v in scope:
            if asg[v] < 0:
                s = dom[v].bit_count()
                if s < best_size:
                    best, best_size = v, s
        return best

    def _first_done(self, asg: list[int]) -> bool:
        return all(asg[v] >= 0 for v in self.first)

    # -- components of the still-unassigned part
    def components(self, asg: list[int], scope: Sequence[int]) -> list[list[int]]:
        nbrs = self.csp.nbrs
        free = [v for v in scope if asg[v] < 0]
        seen: set[int] = set()
        comps = []
        for s in free:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            for x in comp:
                for y in nbrs[x]:
                    if asg[y] < 0 and y not in seen:
                        seen.add(y)
                        comp.append(y)
            comps.append(sorted(comp))
        return comps

    # -- decision
    def solve_split(self, dom, asg, scope) -> list[int] | None:
        for comp in self.components(asg, scope):
            sol = self._dfs(dom, asg, comp)
            if sol is None:
                return None
            for v in comp:
                asg[v] = sol[v]
                dom[v] = 1 << sol[v]
        return asg

    def _dfs(self, dom, asg, scope) -> list[int] | None:
        sset = set(scope)
        v = self._pick(dom, asg, scope, sset)
        if v < 0:
            return asg
        had_first = bool(self.first) and not self._first_done(asg)
        for a in _bits(dom[v]):
            self._tick()
            d2, a2 = dom[:], asg[:]
            if not self.assign(d2, a2, v, a):
                continue
            if had_first and self._first_done(a2):
                self.first_completions += 1
                sol = self.solve_split(d2, a2, scope)
            else:
                sol = self._dfs(d2, a2, scope)
            if sol is not None:
                return sol
        return None

    # -- counting
    def count_split(self, dom, asg, scope) -> int:
        total = 1
        for comp in self.components(asg, scope):
            c = self._count(dom, asg, comp)
            if not c:
                return 0
            total *= c
        return total

    def _count(self, dom, asg, scope) -> int:
        sset = set(scope)
        v = self._pick(dom, asg, scope, sset)
        if v < 0:
            return 1
        had_first = bool(self.first) and not self._first_done(asg)
        total = 0
        for a in _bits(dom[v]):
            self._tick()
            d2, a2 = dom[:], asg[:]
            if not self.assign(d2, a2, v, a):
                continue
            if had_first and self._first_done(a2):
                self.first_completions += 1
                total += self.count_split(d2, a2, scope)
            else:
                total += self._count(d2, a2, scope)
        return total


def _prepare(csp: BinaryCSP, search: _Search):
    dom = [(1 << len(vs)) - 1 for vs in csp.values]
    asg = [-1] * csp.n
    if any(d == 0 for d in dom):
        return None
    for v in range(csp.n):
        if asg[v] < 0 and not dom[v] & (dom[v] - 1):
            if not search.assign(dom, asg, v, dom[v].bit_length() - 1):
                return None
    return dom, asg


def _with_stack(fn):
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        return fn()
    finally:
        sys.setrecursionlimit(limit)


def solve_csp(csp: BinaryCSP, first: Iterable[int] | None = None,
              node_budget: int | None = None) -> SearchVerdict:
    """Find one consistent assignment, or prove none exists.

    Vertices in ``first`` are branched on before all others; each time they
    become fully assigned ``first_completions`` is incremented and the rest
    splits into independent components.
    """
    s = _Search(csp, first, node_budget)
    start = _prepare(csp, s)
    if start is None:
        return SearchVerdict(NOT_COLORABLE, None, 0, 0, "an initial domain is empty")
    dom, asg = start
    try:
        if s.first and s._first_done(asg):
            s.first_completions += 1
        sol = _with_stack(lambda: s.solve_split(dom, asg, list(range(csp.n))))
    except _OutOfNodes:
        return SearchVerdict(BUDGET_EXHAUSTED, None, s.nodes, s.first_completions,
                             f"node budget {node_budget} spent")
    if sol is None:
        return SearchVerdict(NOT_COLORABLE, None, s.nodes, s.first_completions,
                             "exhaustive backtracking closed every branch")
    values = tuple(csp.values[v][sol[v]] for v in range(csp.n))
    if not csp.consistent(values):  # pragma: no cover - would be a solver bug
        raise AssertionError("solver produced an inconsistent assignment")
    return SearchVerdict(COLORABLE, Coloring(values), s.nodes, s.first_completions)


@dataclass(frozen=True)
class CountResult:
    count: int | None
    nodes_explored: int
    first_completions: int = 0

    @property
    def decided(self) -> bool:
        return self.count is not None


def count_csp(csp: BinaryCSP, first: Iterable[int] | None = None,
              node_budget: int | None = None) -> CountResult:
    s = _Search(csp, first, node_budget)
    start = _prepare(csp, s)
    if start is None:
        return CountResult(0, 0)
    dom, asg = start
    try:
        c = _with_stack(lambda: s.count_split(dom, asg, list(range(csp.n))))
    except _OutOfNodes:
        return CountResult(None, s.nodes, s.first_completions)
    return CountResult(c, s.nodes, s.first_completions)


# ---------------------------------------------------------------- colouring front ends

def list_csp(g: Graph, lists: ListAssignment | Sequence[Iterable[int]]) -> BinaryCSP:
    lst = lists.lists if isinstance(lists, ListAssignment) else lists
    if len(lst) != g.n:
        raise ValueError(f"{len(lst)} lists for {g.n} vertices")
    csp = BinaryCSP([sorted(l) for l in lst])
    for u, v in g.edges:
        csp.add_inequality(u, v)
    return csp


def is_proper(g: Graph, coloring: Sequence[int]) -> bool:
    return len(coloring) == g.n and all(coloring[u] != coloring[v] for u, v in g.edges)


def verify_list_coloring(g: Graph, lists: ListAssignment | Sequence[Iterable[int]],
                         coloring: Sequence[int]) -> bool:
    lst = lists.lists if isinstance(lists, ListAssignment) else lists
    return is_proper(g, coloring) and all(coloring[v] in lst[v] for v in range(g.n))


def solve_list(g: Graph, lists: ListAssignment | Sequence[Iterable[int]],
               first: Iterable[int] | None = None, node_budget: int | None = None) -> SearchVerdict:
    verdict = solve_csp(list_csp(g, lists), first, node_budget)
    if verdict.witness is not None and not verify_list_coloring(g, lists, verdict.witness):
        raise AssertionError("witness failed verification")  # pragma: no cover
    return verdict


def solve_k(g: Graph, k: int, node_budget: int | None = None) -> SearchVerdict:
    """Plain k-colouring with colours 1..k; vertex 0 is pinned to colour 1."""
    if g.n == 0:
        return SearchVerdict(COLORABLE, Coloring(()), 0)
    if k < 1:
        return SearchVerdict(NOT_COLORABLE, None, 0, 0, "no colours available")
    lists = [range(1, k + 1)] * g.n
    lists[0] = [1]
    return solve_list(g, lists, node_budget=node_budget)


def count_colorings(g: Graph, k: int, node_budget: int | None = None) -> int:
    """Exact number of proper maps V -> {1..k}."""
    if g.n > 30 and node_budget is None:
        raise ValueError("counting is limited to 30 vertices unless a node budget is given")
    res = count_csp(list_csp(g, [range(1, k + 1)] * g.n), node_budget=node_budget)
    if res.count is None:
        raise RuntimeError(f"node budget {node_budget} spent while counting")
    return res.count


def solve_list_edges(g: Graph, edge_lists: Sequence[Iterable[int]],
                     node_budget: int | None = None) -> SearchVerdict:
    """List edge-colouring: ``edge_lists[i]`` belongs to ``g.edges[i]``."""
    lg = line_graph(g).graph
    verdict = solve_list(lg, [frozenset(l) for l in edge_lists], node_budget=node_budget)
    return verdict


def is_proper_edge_coloring(g: Graph, colors: Sequence[int]) -> bool:
    seen: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        for x in (u, v):
            if (x, colors[i]) in seen:
                return False
            seen[(x, colors[i])] = i
    return True
