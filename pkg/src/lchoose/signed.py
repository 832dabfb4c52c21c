"""Signed graphs: symmetric and cyclic colourings, switching, signature search, gadgets."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Graph, make_complete, norm_edge
from .solver import (BUDGET_EXHAUSTED, COLORABLE, NOT_COLORABLE, BinaryCSP, Coloring,
                     SearchVerdict, solve_csp)

NK = "nk"
ZK = "zk"
MODES = (NK, ZK)

ALL_COLORABLE = "all-colorable"
SOME_FAIL = "some-signature-fails"
INCONCLUSIVE = "inconclusive"

DEFAULT_CLASS_BUDGET = 1 << 20


@dataclass(frozen=True)
class SignedGraph:
    graph: Graph
    sigma: tuple[int, ...]

    def __post_init__(self):
        sig = tuple(int(s) for s in self.sigma)
        if len(sig) != self.graph.m:
            raise ValueError(f"{len(sig)} signs for {self.graph.m} edges")
        if any(s not in (1, -1) for s in sig):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "sigma", sig)

    @classmethod
    def from_signs(cls, n: int, triples: Iterable[Sequence[int]]) -> "SignedGraph":
        signs: dict[tuple[int, int], int] = {}
        for u, v, s in triples:
            e = norm_edge(int(u), int(v))
            if e in signs:
                raise ValueError(f"edge {e} listed twice")
            signs[e] = int(s)
        g = Graph.from_edges(n, signs)
        return cls(g, tuple(signs[e] for e in g.edges))

    @classmethod
    def all_positive(cls, g: Graph) -> "SignedGraph":
        return cls(g, (1,) * g.m)

    def sign(self, u: int, v: int) -> int:
        return self.sigma[self.graph.edge_index[norm_edge(u, v)]]

    def triples(self) -> list[tuple[int, int, int]]:
        return [(u, v, s) for (u, v), s in zip(self.graph.edges, self.sigma)]

    def negative_edges(self) -> list[tuple[int, int]]:
        return [e for e, s in zip(self.graph.edges, self.sigma) if s < 0]


def symmetric_set(k: int) -> tuple[int, ...]:
    """The palette {0 if k odd, +-1, ..., +-floor(k/2)}."""
    q = k // 2
    vals = [x for i in range(1, q + 1) for x in (i, -i)]
    if k % 2:
        vals.insert(0, 0)
    return tuple(sorted(vals))


def cyclic_set(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def zk_neg(x: int, k: int) -> int:
    return (k - x) % k


def palette(k: int, mode: str) -> tuple[int, ...]:
    if mode == NK:
        return symmetric_set(k)
    if mode == ZK:
        return cyclic_set(k)
    raise ValueError(f"unknown mode {mode!r}")


def _image(sign: int, k: int, mode: str):
    if mode == NK:
        return (lambda x: x) if sign > 0 else (lambda x: -x)
    return (lambda x: x % k) if sign > 0 else (lambda x: (-x) % k)


def signed_csp(sg: SignedGraph, k: int, mode: str,
               domains: Mapping[int, Iterable[int]] | None = None) -> BinaryCSP:
    pal = palette(k, mode)
    values = [pal] * sg.graph.n
    if domains:
        values = list(values)
        for v, d in domains.items():
            values[v] = tuple(x for x in pal if x in set(d))
    csp = BinaryCSP(values)
    for (u, v), s in zip(sg.graph.edges, sg.sigma):
        csp.add_inequality(u, v, _image(s, k, mode))
    return csp


def is_signed_coloring(sg: SignedGraph, k: int, mode: str, f: Sequence[int]) -> bool:
    pal = set(palette(k, mode))
    if len(f) != sg.graph.n or any(x not in pal for x in f):
        return False
    for (u, v), s in zip(sg.graph.edges, sg.sigma):
        if mode == NK and f[u] == s * f[v]:
            return False
        if mode == ZK and f[u] % k == (s * f[v]) % k:
            return False
    return True


def _solve(sg: SignedGraph, k: int, mode: str, node_budget=None, domains=None) -> SearchVerdict:
    v = solve_csp(signed_csp(sg, k, mode, domains), node_budget=node_budget)
    if v.witness is not None and not is_signed_coloring(sg, k, mode, v.witness):
        raise AssertionError("signed witness failed verification")  # pragma: no cover
    return v


def solve_signed_k(sg: SignedGraph, k: int, node_budget: int | None = None,
                   domains: Mapping[int, Iterable[int]] | None = None) -> SearchVerdict:
    """Search f: V -> N_k with f(x) != sigma(xy) f(y) on every edge."""
    return _solve(sg, k, NK, node_budget, domains)


def solve_signed_zk(sg: SignedGraph, k: int, node_budget: int | None = None,
                    domains: Mapping[int, Iterable[int]] | None = None) -> SearchVerdict:
    """Search f: V -> Z_k with f(x) != sigma(xy) f(y) mod k on every edge."""
    return _solve(sg, k, ZK, node_budget, domains)


def solve_signed(sg: SignedGraph, k: int, mode: str, node_budget: int | None = None) -> SearchVerdict:
    return _solve(sg, k, mode, node_budget)


def switch(sg: SignedGraph, s: Iterable[int]) -> SignedGraph:
    """Flip the sign of every edge with exactly one end in ``s``."""
    side = set(s)
    sig = tuple(-x if ((u in side) != (v in side)) else x
                for (u, v), x in zip(sg.graph.edges, sg.sigma))
    return SignedGraph(sg.graph, sig)


def switch_coloring(f: Sequence[int], s: Iterable[int], k: int, mode: str) -> list[int]:
    """Colouring of ``switch(sg, s)`` obtained from a colouring of ``sg``."""
    side = set(s)
    if mode == NK:
        return [-x if v in side else x for v, x in enumerate(f)]
    return [zk_neg(x, k) if v in side else x for v, x in enumerate(f)]


# ---------------------------------------------------------------- signature classes

def cotree_edges(g: Graph) -> list[int]:
    tree = set(g.spanning_forest())
    return [i for i in range(g.m) if i not in tree]


def class_count(g: Graph) -> int:
    return 1 << len(cotree_edges(g))


def signature_class(g: Graph, index: int, cotree: Sequence[int] | None = None) -> SignedGraph:
    """Representative number ``index``: tree edges positive, co-tree edge j negative iff bit j is set."""
    cotree = cotree_edges(g) if cotree is None else cotree
    sig = [1] * g.m
    for j, e in enumerate(cotree):
        if index >> j & 1:
            sig[e] = -1
    return SignedGraph(g, tuple(sig))


def signature_classes(g: Graph) -> Iterator[SignedGraph]:
    cotree = cotree_edges(g)
    for i in range(1 << len(cotree)):
        yield signature_class(g, i, cotree)


def all_signatures(g: Graph) -> Iterator[SignedGraph]:
    for signs in itertools.product((1, -1), repeat=g.m):
        yield SignedGraph(g, signs)


@dataclass(frozen=True)
class SignedDecision:
    status: str
    failing: SignedGraph | None = None
    checked: int = 0
    total: int = 0
    reason: str | None = None

    @property
    def holds(self) -> bool | None:
        if self.status == INCONCLUSIVE:
            return None
        return self.status == ALL_COLORABLE

    def __bool__(self) -> bool:
        return self.status == ALL_COLORABLE


def _scan_classes(args):
    g, k, mode, start, stop, node_budget = args
    cotree = cotree_edges(g)
    for i in range(start, stop):
        v = solve_signed(signature_class(g, i, cotree), k, mode, node_budget)
        if v.status == NOT_COLORABLE:
            return i, "fail"
        if v.status == BUDGET_EXHAUSTED:
            return i, "budget"
    return stop, "ok"


def decide_signed_colorable(g: Graph, k: int, mode: str = NK, *, budget: int | None = None,
                            node_budget: int | None = None, jobs: int = 1,
                            chunk: int = 4096) -> SignedDecision:
    """Check every signature of ``g`` up to switching.

    Switching at a vertex set preserves colourability (negate the colours on
    that set), so it suffices to try one signature per class: spanning-forest
    edges positive and co-tree edges free.  The first failing class in binary
    order is reported.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    total = class_count(g)
    cap = DEFAULT_CLASS_BUDGET if budget is None else budget
    if total > cap:
        return SignedDecision(INCONCLUSIVE, None, 0, total, f"{total} classes exceed the budget {cap}")
    ranges = [(g, k, mode, s, min(s + chunk, total), node_budget) for s in range(0, total, chunk)]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        results = pool.map(_scan_classes, ranges) if pool else map(_scan_classes, ranges)
        for (g_, k_, m_, start, stop, _), (idx, tag) in zip(ranges, results):
            if tag == "ok":
                continue
            if tag == "budget":
                return SignedDecision(INCONCLUSIVE, None, idx, total, "node budget spent")
            return SignedDecision(SOME_FAIL, signature_class(g, idx), idx + 1, total)
    finally:
        if pool is not None:
            pool.shutdown()
    return SignedDecision(ALL_COLORABLE, None, total, total)


# ---------------------------------------------------------------- gadgets

GADGET_MAX_VERTICES = 16
SEARCH_MAX_VERTICES = 11
ODD = (1, 3)
EVEN = (0, 2)


@dataclass(frozen=True)
class GadgetReport:
    is_gadget: bool
    escape: Coloring | None
    z4_colorable: bool

    def __bool__(self) -> bool:
        return self.is_gadget


def gadget_report(h: SignedGraph, u: int, v: int) -> GadgetReport:
    if h.graph.n > GADGET_MAX_VERTICES:
        raise ValueError(f"gadget checks are limited to {GADGET_MAX_VERTICES} vertices")
    esc = solve_signed_zk(h, 4, domains={u: ODD, v: ODD})
    if esc.status != NOT_COLORABLE:
        return GadgetReport(False, esc.witness, True)
    return GadgetReport(True, None, solve_signed_zk(h, 4).colorable)


def verify_gadget(h: SignedGraph, u: int, v: int) -> bool:
    """True iff every Z_4-colouring of ``h`` puts 0 or 2 on ``u`` or ``v``."""
    return gadget_report(h, u, v).is_gadget


@dataclass(frozen=True)
class Gadget:
    graph: SignedGraph
    u: int = 0
    v: int = 1
    w: int | None = 2

    @property
    def n(self) -> int:
        return self.graph.graph.n


def _exhaustive_gadget(n: int) -> Gadget | None:
    pairs = [p for p in itertools.combinations(range(n), 2) if p != (0, 1)]
    for r in range(len(pairs) + 1):
        for extra in itertools.combinations(pairs, r):
            g = Graph.from_edges(n, [(0, 1), *extra])
            for sg in signature_classes(g):
                if sg.sign(0, 1) < 0:
                    continue
                rep = gadget_report(sg, 0, 1)
                if rep.is_gadget and rep.z4_colorable:
                    return _with_top(sg)
    return None


def _with_top(sg: SignedGraph) -> Gadget | None:
    """Choose a top vertex whose edges to the base are positive, switching it if needed."""
    g = sg.graph
    for w in range(2, g.n):
        s_u = sg.sign(0, w) if g.has_edge(0, w) else None
        s_v = sg.sign(1, w) if g.has_edge(1, w) else None
        signs = {s for s in (s_u, s_v) if s is not None}
        if len(signs) <= 1:
            out = switch(sg, [w]) if signs == {-1} else sg
            return Gadget(out, 0, 1, w)
    return None


def search_gadget(max_vertices: int, seed: int = 0, restarts: int = 400,
                  exhaustive_up_to: int = 5) -> Gadget | None:
    """Find a Z_4-colourable signed graph on which u=0, v=1 cannot both avoid {0, 2}.

    Sizes up to ``exhaustive_up_to`` are searched exhaustively (signatures up
    to switching, base edge positive).  Larger sizes use a seeded greedy: from
    a positive triangle on u, v, w, repeatedly take a colouring that escapes
    and add a violated edge that keeps the graph colourable, adding a vertex
    when no such edge exists; restart when the vertex cap is hit.  Returns
    None when nothing is found.
    """
    if max_vertices > SEARCH_MAX_VERTICES:
        raise ValueError(f"gadget search is limited to {SEARCH_MAX_VERTICES} vertices")
    for n in range(3, min(max_vertices, exhaustive_up_to) + 1):
        found = _exhaustive_gadget(n)
        if found is not None:
            return found
    if max_vertices <= exhaustive_up_to:
        return None
    rng = random.Random(seed)
    for _ in range(restarts):
        found = _greedy_gadget(max_vertices, rng)
        if found is not None:
            return found
    return None


def _greedy_gadget(cap: int, rng: random.Random) -> Gadget | None:
    n = 3
    signs: dict[tuple[int, int], int] = {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    while True:
        sg = SignedGraph.from_signs(n, [(u, v, s) for (u, v), s in signs.items()])
        esc = solve_signed_zk(sg, 4, domains={0: ODD, 1: ODD})
        if esc.status != COLORABLE:
            if solve_signed_zk(sg, 4).colorable:
                return Gadget(sg, 0, 1, 2)
            return None
        f = esc.witness
        options = []
        for x, y in itertools.combinations(range(n), 2):
            if (x, y) in signs:
                continue
            for s in (1, -1):
                if f[y] % 4 == (s * f[x]) % 4:
                    options.append((x, y, s))
        rng.shuffle(options)
        for x, y, s in options:
            trial = dict(signs)
            trial[(x, y)] = s
            if solve_signed_zk(SignedGraph.from_signs(n, [(a, b, t) for (a, b), t in trial.items()]), 4).colorable:
                signs = trial
                break
        else:
            if n >= cap:
                return None
            x = n
            n += 1
            for y in rng.sample(range(x), 2):
                signs[(y, x)] = rng.choice((1, -1))


K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# Tops of the copies on edges avoiding vertex 3 go to vertex 3; the other three share one new vertex.
DEFAULT_TOP_PATTERN: tuple[int | str | None, ...] = (3, 3, "t", 3, "t", "t")


@dataclass(frozen=True)
class Assembly:
    graph: SignedGraph
    k4: tuple[int, int, int, int]
    copies: tuple[tuple[int, ...], ...]  # copies[i][x] = vertex of gadget vertex x in copy i
    gadget: Gadget
    merges: int


def assemble_wegner(gadget: Gadget, pattern: Sequence[int | str | None] = DEFAULT_TOP_PATTERN,
                    force: bool = False) -> Assembly:
    """Glue six gadget copies onto the edges of an all-positive K_4.

    ``pattern[i]`` says where the top of the copy on ``K4_EDGES[i]`` goes: a
    K_4 vertex (not on that edge), a name shared by copies that merge into
    one new vertex, or None for a private top.
    """
    h = gadget.graph
    if not force:
        if h.graph.n < 3 or gadget.w is None:
            raise ValueError("a gadget needs a base edge and a top vertex")
        if not verify_gadget(h, gadget.u, gadget.v):
            raise ValueError("the gadget does not pass verification")
    if len(pattern) != 6:
        raise ValueError("the top pattern needs one entry per K_4 edge")
    signs: dict[tuple[int, int], int] = {e: 1 for e in K4_EDGES}
    n = 4
    named: dict[str, int] = {}
    copies = []
    merges = 0
    for (a, b), target in zip(K4_EDGES, pattern):
        where = {gadget.u: a, gadget.v: b}
        if gadget.w is not None:
            if target is None:
                where[gadget.w] = n
                n += 1
            elif isinstance(target, int):
                if target in (a, b) or not 0 <= target < 4:
                    raise ValueError(f"top of the copy on {a}{b} cannot go to {target}")
                where[gadget.w] = target
                merges += 1
            else:
                if target not in named:
                    named[target] = n
                    n += 1
                else:
                    merges += 1
                where[gadget.w] = named[target]
        for x in range(h.graph.n):
            if x not in where:
                where[x] = n
                n += 1
        copies.append(tuple(where[x] for x in range(h.graph.n)))
        for (x, y), s in zip(h.graph.edges, h.sigma):
            e = norm_edge(where[x], where[y])
            if signs.setdefault(e, s) != s:
                raise ValueError(f"copies disagree on the sign of edge {e}")
    sg = SignedGraph.from_signs(n, [(u, v, s) for (u, v), s in signs.items()])
    return Assembly(sg, (0, 1, 2, 3), tuple(copies), gadget, merges)


@dataclass(frozen=True)
class AssemblyCheck:
    not_colorable: bool
    k4_contradiction: bool
    witness: Coloring | None = None
    nodes_explored: int = 0

    def __bool__(self) -> bool:
        return self.not_colorable and self.k4_contradiction


def verify_assembly_not_z4(asm: Assembly) -> AssemblyCheck:
    """Confirm no Z_4-colouring exists, and replay the K_4 argument.

    The replay runs over all 24 injective colourings of the K_4 (positive
    edges force distinct colours): each leaves some K_4 edge with both ends
    odd, and the gadget copy on that edge must then fail to extend.
    """
    sg, k4 = asm.graph, asm.k4
    csp = signed_csp(sg, 4, ZK)
    first = set(k4)
    if asm.gadget.w is not None:
        first |= {c[asm.gadget.w] for c in asm.copies}
    full = solve_csp(csp, first=sorted(first))
    fires = True
    h = asm.gadget.graph
    for colors in itertools.permutations(range(4)):
        odd_edges = [i for i, (a, b) in enumerate(K4_EDGES) if colors[a] % 2 and colors[b] % 2]
        if not odd_edges:
            fires = False
            break
        i = odd_edges[0]
        a, b = K4_EDGES[i]
        dom = {asm.gadget.u: (colors[a],), asm.gadget.v: (colors[b],)}
        if solve_signed_zk(h, 4, domains=dom).colorable:
            fires = False
            break
    return AssemblyCheck(full.status == NOT_COLORABLE, fires, full.witness, full.nodes_explored)


def fake_gadget() -> Gadget:
    """A single positive edge: passes no verification."""
    return Gadget(SignedGraph.from_signs(2, [(0, 1, 1)]), 0, 1, None)


def k4_positive() -> SignedGraph:
    return SignedGraph.all_positive(make_complete(4))
